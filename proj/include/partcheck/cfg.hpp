#pragma once

#include "partcheck/ast.hpp"

#include <map>
#include <vector>

namespace partcheck {

/// One unit of execution inside a basic block. Simple statements (expression,
/// declaration, return, goto, skipped) appear as themselves; control
/// statements contribute their condition (and a for-loop its step).
struct CfgElement {
  enum class Kind { Statement, Condition, Step };
  Kind kind = Kind::Statement;
  const Stmt *stmt = nullptr;
  /// The condition or step expression; for statements, `stmt->expr`.
  const Expr *expr = nullptr;
  SourceLocation loc;
};

struct BasicBlock {
  int id = 0;
  std::vector<CfgElement> elements;
  std::vector<int> succs;
  std::vector<int> preds;
};

/// Position of an element: block id and index inside the block.
struct CfgPos {
  int block = -1;
  int index = -1;
  bool valid() const { return block >= 0; }
};

class Cfg {
public:
  std::vector<BasicBlock> blocks;
  int entry = 0;
  int exit = 1;

  /// Dominance on the forward graph (loop back edges removed). Blocks not
  /// reachable from the entry are dominated by every block.
  bool dominates(int a, int b) const;
  bool dominates(CfgPos a, CfgPos b) const;
  int idom(int b) const { return idom_[static_cast<size_t>(b)]; }
  bool reachable(int b) const { return rpo_index_[static_cast<size_t>(b)] >= 0; }
  /// Edges (from, to) dropped to form the forward graph.
  const std::vector<std::pair<int, int>> &back_edges() const { return back_edges_; }

  /// Position of a statement element (keyed by Stmt) or of a condition/step
  /// (keyed by its Expr).
  CfgPos position_of(const Stmt *s) const;
  CfgPos position_of(const Expr *e) const;

  /// Every element in reverse post-order of the forward graph; unreachable
  /// blocks follow in id order.
  std::vector<std::pair<CfgPos, const CfgElement *>> ordered_elements() const;

private:
  friend Cfg build_cfg(const FunctionDef &fn);
  friend class CfgBuilder;
  void finish();

  std::vector<int> idom_;
  std::vector<int> rpo_index_;
  std::vector<int> rpo_;
  std::vector<std::pair<int, int>> back_edges_;
  std::map<const void *, CfgPos> index_;
};

Cfg build_cfg(const FunctionDef &fn);

} // namespace partcheck
