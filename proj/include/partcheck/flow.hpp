#pragma once

#include "partcheck/catalog.hpp"
#include "partcheck/cfg.hpp"
#include "partcheck/params.hpp"

#include <string>
#include <utility>
#include <vector>

namespace partcheck {

enum class OpKind { Assign, Call, ArrayAccess, CondExpr, Return, MemberRead };

const char *to_string(OpKind k);

namespace tag {
inline constexpr unsigned Source = 1u << 0;
inline constexpr unsigned Sink = 1u << 1;
inline constexpr unsigned SC = 1u << 2;
inline constexpr unsigned ISC = 1u << 3;
inline constexpr unsigned CS = 1u << 4;
} // namespace tag

std::string tags_to_string(unsigned tags);

/// Which flow a graph follows: in-TEE data into an output parameter, input
/// data into critical statements, or every touch of shared memory.
enum class View { Output, Input, Shared };

const char *to_string(View v);

enum class IscKind { None, ShallowCopy, SizeRead, DirectUse };

const char *to_string(IscKind k);

struct FlowNode {
  int id = 0;
  /// Where findings on this node are reported: the statement start, or the
  /// call site when the node sits in a callee reached through a raw pointer.
  SourceLocation loc;
  /// The operation itself.
  SourceLocation op_loc;
  OpKind op = OpKind::Assign;
  CatalogClass cls = CatalogClass::None;
  unsigned tags = 0;
  /// Defined variable (assignments, copy destinations) or callee name.
  std::string symbol;
  std::string function;
  std::string text;
  /// Rendered call arguments (calls only).
  std::vector<std::string> args;

  // Facts the tags are derived from.
  /// Output: introduces data; Input/Shared: reads the parameter directly.
  bool origin = false;
  /// Output: writes the parameter; Input: critical statement on input data.
  bool sink = false;
  /// Input: condition on input-derived data.
  bool guard = false;
  IscKind isc = IscKind::None;
  /// Input: ids of guard nodes that strictly dominate this node.
  std::vector<int> guarded_by;
  /// Input: copy destination allocated with an input-derived size.
  bool alloc_matched = false;
  /// Input: array write indexed by the induction variable of an enclosing
  /// for-loop whose bound is input-derived, into a fixed-size local array;
  /// the id of that loop's condition node, else -1.
  int loop_cond = -1;

  // Facts used by the refinement filters.
  /// Output: every written value is a length (strlen, sizeof, `.size`).
  bool length_value = false;
  /// Output: every written value originates from parameters only.
  bool param_value = false;
  /// Input: base is this parameter's buffer and the index derives only
  /// from its size.
  bool own_size_index = false;
};

struct FlowEdge {
  int from = 0;
  int to = 0;
  auto operator<=>(const FlowEdge &) const = default;
};

struct FlowGraph {
  ParamBinding binding;
  View view = View::Output;
  std::vector<FlowNode> nodes;  // ids are indices, in (file, line, column) order
  std::vector<FlowEdge> edges;  // sorted, unique
  std::vector<int> entry_sources;

  std::vector<std::vector<int>> successors() const;
};

class UnresolvedEntry : public Error {
public:
  using Error::Error;
};

class UnknownNode : public Error {
public:
  using Error::Error;
};

struct FlowOptions {
  /// Let raw-pointer formals of callees keep parameter alias identity.
  bool deep_pointers = false;
};

/// The views a binding yields: Output for output, Input for input, both for
/// in/out, Shared for shared memory, none for unknown.
std::vector<View> views_for(ParamRole role);

/// Builds every graph of every binding of one root.
std::vector<FlowGraph> build_root_flows(const ParamRoot &root,
                                        const std::vector<ParamBinding> &bindings,
                                        const std::vector<const Ast *> &asts,
                                        const ApiCatalog &catalog,
                                        const FlowOptions &options = {});

/// Builds the graph of one binding in one view. Throws UnresolvedEntry if
/// no root matches the binding's entry function and command.
FlowGraph build_flow(const ParamBinding &binding, View view,
                     const std::vector<const Ast *> &asts, const ApiCatalog &catalog,
                     const FlowOptions &options = {});

/// Reflexive-transitive reachability. Throws UnknownNode.
bool reaches(const FlowGraph &graph, int from, int to);

/// Arguments at or after the first variadic position of a formatter call,
/// as (position, text).
std::vector<std::pair<int, std::string>> variadic_expand(const FlowNode &call,
                                                         const ApiCatalog &catalog);

/// Tags as recomputed from the node facts and the graph.
unsigned derive_tags(const FlowGraph &graph, const FlowNode &node);

/// One node per line: id, tags, location, op, symbol; then edges.
std::string dump_flow(const FlowGraph &graph);

} // namespace partcheck
