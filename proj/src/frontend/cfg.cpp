#include "partcheck/cfg.hpp"

#include <algorithm>
#include <string>

namespace partcheck {

class CfgBuilder {
public:
  explicit CfgBuilder(Cfg &g) : g_(g) {}

  void run(const FunctionDef &fn) {
    g_.entry = new_block();
    g_.exit = new_block();
    cur_ = g_.entry;
    if (fn.body)
      stmt(fn.body.get());
    if (cur_ >= 0)
      edge(cur_, g_.exit);
    for (const auto &[from, label] : gotos_) {
      auto it = labels_.find(label);
      edge(from, it == labels_.end() ? g_.exit : it->second);
    }
  }

private:
  struct Jump {
    int brk;
    int cont; // -1 for switch
  };
  struct SwitchCtx {
    int cond_block;
    bool has_default;
  };

  int new_block() {
    BasicBlock b;
    b.id = static_cast<int>(g_.blocks.size());
    g_.blocks.push_back(std::move(b));
    return g_.blocks.back().id;
  }

  void edge(int a, int b) {
    auto &s = g_.blocks[static_cast<size_t>(a)].succs;
    if (std::find(s.begin(), s.end(), b) != s.end())
      return;
    s.push_back(b);
    g_.blocks[static_cast<size_t>(b)].preds.push_back(a);
  }

  int live() {
    if (cur_ < 0)
      cur_ = new_block();
    return cur_;
  }

  void add(CfgElement::Kind kind, const Stmt *s, const Expr *e, const void *key,
           SourceLocation loc) {
    int b = live();
    auto &elems = g_.blocks[static_cast<size_t>(b)].elements;
    g_.index_[key] = CfgPos{b, static_cast<int>(elems.size())};
    elems.push_back(CfgElement{kind, s, e, std::move(loc)});
  }

  void add_stmt(const Stmt *s) {
    add(CfgElement::Kind::Statement, s, s->expr.get(), s, s->loc);
  }

  void add_cond(const Stmt *s, const Expr *e) {
    add(CfgElement::Kind::Condition, s, e, e, e->loc);
  }

  void stmt(const Stmt *s) {
    if (!s)
      return;
    switch (s->kind) {
    case StmtKind::Compound:
      for (const auto &k : s->body)
        stmt(k.get());
      return;
    case StmtKind::Expr:
    case StmtKind::Decl:
    case StmtKind::Empty:
    case StmtKind::Skipped:
      add_stmt(s);
      return;
    case StmtKind::Return:
      add_stmt(s);
      edge(cur_, g_.exit);
      cur_ = -1;
      return;
    case StmtKind::Goto:
      add_stmt(s);
      gotos_.emplace_back(cur_, s->label);
      cur_ = -1;
      return;
    case StmtKind::Break:
      add_stmt(s);
      if (!jumps_.empty())
        edge(cur_, jumps_.back().brk);
      cur_ = -1;
      return;
    case StmtKind::Continue:
      add_stmt(s);
      for (auto it = jumps_.rbegin(); it != jumps_.rend(); ++it) {
        if (it->cont >= 0) {
          edge(cur_, it->cont);
          break;
        }
      }
      cur_ = -1;
      return;
    case StmtKind::Label: {
      int b = new_block();
      if (cur_ >= 0)
        edge(cur_, b);
      labels_[s->label] = b;
      cur_ = b;
      add_stmt(s);
      stmt(s->then_s.get());
      return;
    }
    case StmtKind::If: {
      add_cond(s, s->expr.get());
      int c = cur_;
      int t = new_block();
      edge(c, t);
      cur_ = t;
      stmt(s->then_s.get());
      int t_end = cur_;
      int e_end = c;
      if (s->else_s) {
        int e = new_block();
        edge(c, e);
        cur_ = e;
        stmt(s->else_s.get());
        e_end = cur_;
      }
      int join = new_block();
      if (t_end >= 0)
        edge(t_end, join);
      if (e_end >= 0)
        edge(e_end, join);
      cur_ = join;
      return;
    }
    case StmtKind::While: {
      int header = new_block();
      if (cur_ >= 0)
        edge(cur_, header);
      cur_ = header;
      add_cond(s, s->expr.get());
      int body = new_block();
      int out = new_block();
      edge(header, body);
      edge(header, out);
      jumps_.push_back({out, header});
      cur_ = body;
      stmt(s->then_s.get());
      if (cur_ >= 0)
        edge(cur_, header);
      jumps_.pop_back();
      cur_ = out;
      return;
    }
    case StmtKind::DoWhile: {
      int body = new_block();
      if (cur_ >= 0)
        edge(cur_, body);
      int cond = new_block();
      int out = new_block();
      jumps_.push_back({out, cond});
      cur_ = body;
      stmt(s->then_s.get());
      if (cur_ >= 0)
        edge(cur_, cond);
      jumps_.pop_back();
      cur_ = cond;
      add_cond(s, s->expr.get());
      edge(cond, body);
      edge(cond, out);
      cur_ = out;
      return;
    }
    case StmtKind::For: {
      if (s->init)
        stmt(s->init.get());
      int header = new_block();
      if (cur_ >= 0)
        edge(cur_, header);
      cur_ = header;
      if (s->expr)
        add_cond(s, s->expr.get());
      int body = new_block();
      int step = new_block();
      int out = new_block();
      edge(header, body);
      if (s->expr)
        edge(header, out);
      jumps_.push_back({out, step});
      cur_ = body;
      stmt(s->then_s.get());
      if (cur_ >= 0)
        edge(cur_, step);
      jumps_.pop_back();
      cur_ = step;
      if (s->step)
        add(CfgElement::Kind::Step, s, s->step.get(), s->step.get(), s->step->loc);
      edge(step, header);
      cur_ = out;
      return;
    }
    case StmtKind::Switch: {
      add_cond(s, s->expr.get());
      int c = cur_;
      int out = new_block();
      switches_.push_back({c, false});
      jumps_.push_back({out, -1});
      cur_ = -1;
      stmt(s->then_s.get());
      if (cur_ >= 0)
        edge(cur_, out);
      if (!switches_.back().has_default)
        edge(c, out);
      jumps_.pop_back();
      switches_.pop_back();
      cur_ = out;
      return;
    }
    case StmtKind::Case:
    case StmtKind::Default: {
      int b = new_block();
      if (cur_ >= 0)
        edge(cur_, b);
      if (!switches_.empty()) {
        edge(switches_.back().cond_block, b);
        if (s->kind == StmtKind::Default)
          switches_.back().has_default = true;
      }
      cur_ = b;
      add_stmt(s);
      stmt(s->then_s.get());
      return;
    }
    }
  }

  Cfg &g_;
  int cur_ = -1;
  std::vector<Jump> jumps_;
  std::vector<SwitchCtx> switches_;
  std::map<std::string, int> labels_;
  std::vector<std::pair<int, std::string>> gotos_;
};

void Cfg::finish() {
  const size_t n = blocks.size();
  // DFS from the entry: edges to a block still on the stack are back edges.
  std::vector<int> state(n, 0); // 0 new, 1 on stack, 2 done
  std::vector<int> post;
  std::vector<std::pair<int, size_t>> stack{{entry, 0}};
  state[static_cast<size_t>(entry)] = 1;
  while (!stack.empty()) {
    auto &[b, next] = stack.back();
    const auto &succs = blocks[static_cast<size_t>(b)].succs;
    if (next < succs.size()) {
      int s = succs[next++];
      if (state[static_cast<size_t>(s)] == 1) {
        back_edges_.emplace_back(b, s);
      } else if (state[static_cast<size_t>(s)] == 0) {
        state[static_cast<size_t>(s)] = 1;
        stack.emplace_back(s, 0);
      }
    } else {
      state[static_cast<size_t>(b)] = 2;
      post.push_back(b);
      stack.pop_back();
    }
  }
  rpo_.assign(post.rbegin(), post.rend());
  rpo_index_.assign(n, -1);
  for (size_t i = 0; i < rpo_.size(); ++i)
    rpo_index_[static_cast<size_t>(rpo_[i])] = static_cast<int>(i);

  auto is_back = [&](int from, int to) {
    return std::find(back_edges_.begin(), back_edges_.end(),
                     std::make_pair(from, to)) != back_edges_.end();
  };

  // Cooper, Harvey & Kennedy iterative dominators over the forward graph.
  idom_.assign(n, -1);
  idom_[static_cast<size_t>(entry)] = entry;
  auto intersect = [&](int a, int b) {
    while (a != b) {
      while (rpo_index_[static_cast<size_t>(a)] > rpo_index_[static_cast<size_t>(b)])
        a = idom_[static_cast<size_t>(a)];
      while (rpo_index_[static_cast<size_t>(b)] > rpo_index_[static_cast<size_t>(a)])
        b = idom_[static_cast<size_t>(b)];
    }
    return a;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int b : rpo_) {
      if (b == entry)
        continue;
      int new_idom = -1;
      for (int p : blocks[static_cast<size_t>(b)].preds) {
        if (rpo_index_[static_cast<size_t>(p)] < 0 || is_back(p, b) ||
            idom_[static_cast<size_t>(p)] < 0)
          continue;
        new_idom = new_idom < 0 ? p : intersect(p, new_idom);
      }
      if (new_idom != idom_[static_cast<size_t>(b)]) {
        idom_[static_cast<size_t>(b)] = new_idom;
        changed = true;
      }
    }
  }
}

bool Cfg::dominates(int a, int b) const {
  if (!reachable(b))
    return true;
  if (!reachable(a))
    return false;
  while (true) {
    if (a == b)
      return true;
    if (b == entry)
      return false;
    b = idom_[static_cast<size_t>(b)];
  }
}

bool Cfg::dominates(CfgPos a, CfgPos b) const {
  if (!a.valid() || !b.valid())
    return false;
  if (a.block == b.block)
    return a.index <= b.index;
  return dominates(a.block, b.block);
}

CfgPos Cfg::position_of(const Stmt *s) const {
  auto it = index_.find(s);
  return it == index_.end() ? CfgPos{} : it->second;
}

CfgPos Cfg::position_of(const Expr *e) const {
  auto it = index_.find(e);
  return it == index_.end() ? CfgPos{} : it->second;
}

std::vector<std::pair<CfgPos, const CfgElement *>> Cfg::ordered_elements() const {
  std::vector<std::pair<CfgPos, const CfgElement *>> out;
  auto emit = [&](int b) {
    const auto &elems = blocks[static_cast<size_t>(b)].elements;
    for (size_t i = 0; i < elems.size(); ++i)
      out.emplace_back(CfgPos{b, static_cast<int>(i)}, &elems[i]);
  };
  for (int b : rpo_)
    emit(b);
  for (const auto &blk : blocks)
    if (!reachable(blk.id))
      emit(blk.id);
  return out;
}

Cfg build_cfg(const FunctionDef &fn) {
  Cfg g;
  CfgBuilder(g).run(fn);
  g.finish();
  return g;
}

} // namespace partcheck
