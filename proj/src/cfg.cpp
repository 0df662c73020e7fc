// GCC 11 misdiagnoses optional<Stmt> copies made while the edge vectors grow.
#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic ignored "-Wmaybe-uninitialized"
#endif

#include "zonemin/cfg.hpp"

#include <map>
#include <sstream>

#include "zonemin/parser.hpp"

namespace zonemin {

namespace {

std::string guard_text(const Guard &g, const ZoneState::Names &names) {
  std::ostringstream os;
  os << (*names)[static_cast<size_t>(g.v)] << " " << to_string(g.op) << " ";
  if (g.has_u) {
    os << (*names)[static_cast<size_t>(g.u)];
    if (g.c > 0)
      os << " + " << g.c;
    else if (g.c < 0)
      os << " - " << -g.c;
  } else {
    os << g.c;
  }
  return os.str();
}

class Builder {
public:
  explicit Builder(const Program &p) : prog_(p) {
    cfg_.name = p.name;
    cfg_.decls = p.decls;
    cfg_.names = ZoneState::make_names(p.decls);
    cfg_.entry = new_block();
    cur_ = cfg_.entry;
  }

  Cfg build() {
    lower(prog_.body);
    fold_empty_blocks();
    link_preds();
    mark_widen_points();
    return std::move(cfg_);
  }

private:
  int new_block() {
    cfg_.blocks.emplace_back();
    return static_cast<int>(cfg_.blocks.size()) - 1;
  }

  void edge(int from, int to, CfgEdge::Label label, std::optional<Stmt> assume = std::nullopt) {
    cfg_.blocks[static_cast<size_t>(from)].succs.push_back({label, to, std::move(assume)});
  }

  void emit(Stmt s) {
    s.text = stmt_text(s, cfg_.names);
    cfg_.blocks[static_cast<size_t>(cur_)].stmts.push_back(std::move(s));
  }

  Guard guard_of(const CondAst &c) const {
    Guard g;
    g.v = prog_.var_id(c.lhs);
    g.op = c.op;
    g.has_u = c.rhs.has_var;
    g.u = c.rhs.has_var ? prog_.var_id(c.rhs.var) : kZ0;
    g.c = c.rhs.c;
    return g;
  }

  Stmt assume_stmt(const Guard &g, int group, int line) {
    Stmt s;
    s.kind = Stmt::SAssume;
    s.guard = g;
    s.branch_group = group;
    s.line = line;
    s.text = stmt_text(s, cfg_.names);
    return s;
  }

  void lower(const BlockAst &blk) {
    for (const StmtAst &s : blk)
      lower_stmt(s);
  }

  void lower_stmt(const StmtAst &s) {
    switch (s.kind) {
    case StmtAst::Assign: {
      Stmt out;
      out.kind = Stmt::SAssign;
      out.v = prog_.var_id(s.target);
      out.line = s.line;
      if (!s.expr.has_var)
        out.rhs = LinearRhs::constant(s.expr.c);
      else if (prog_.var_id(s.expr.var) == out.v)
        out.rhs = LinearRhs::self_plus(s.expr.c);
      else
        out.rhs = LinearRhs::var_plus(prog_.var_id(s.expr.var), s.expr.c);
      emit(out);
      break;
    }
    case StmtAst::Havoc: {
      Stmt out;
      out.kind = Stmt::SAssign;
      out.v = prog_.var_id(s.target);
      out.rhs = LinearRhs::havoc();
      out.line = s.line;
      emit(out);
      break;
    }
    case StmtAst::Assert: {
      Stmt out;
      out.kind = Stmt::SAssert;
      out.guard = guard_of(s.cond);
      out.line = s.line;
      emit(out);
      break;
    }
    case StmtAst::If: {
      Guard g = guard_of(s.cond);
      int group = cfg_.branch_groups++;
      int then_b = new_block();
      int else_b = new_block();
      int join_b = new_block();
      edge(cur_, then_b, CfgEdge::Then, assume_stmt(g, group, s.line));
      edge(cur_, else_b, CfgEdge::Else, assume_stmt(g.negated(), group, s.line));
      cur_ = then_b;
      lower(*s.then_blk);
      edge(cur_, join_b, CfgEdge::Fall);
      cur_ = else_b;
      lower(*s.else_blk);
      edge(cur_, join_b, CfgEdge::Fall);
      cur_ = join_b;
      break;
    }
    case StmtAst::While: {
      Guard g = guard_of(s.cond);
      int group = cfg_.branch_groups++;
      int head = new_block();
      int body_b = new_block();
      int exit_b = new_block();
      edge(cur_, head, CfgEdge::Fall);
      edge(head, body_b, CfgEdge::Then, assume_stmt(g, group, s.line));
      edge(head, exit_b, CfgEdge::Else, assume_stmt(g.negated(), group, s.line));
      cur_ = body_b;
      lower(*s.body);
      edge(cur_, head, CfgEdge::Fall); // back edge
      cur_ = exit_b;
      break;
    }
    }
  }

  // Redirect edges that land on an empty block whose only exit is a bare
  // fall edge, then drop what became unreachable and renumber.
  void fold_empty_blocks() {
    auto passthrough = [&](int b) -> std::optional<int> {
      const BasicBlock &blk = cfg_.blocks[static_cast<size_t>(b)];
      if (!blk.stmts.empty() || blk.succs.size() != 1)
        return std::nullopt;
      const CfgEdge &e = blk.succs[0];
      if (e.assume || e.to == b)
        return std::nullopt;
      return e.to;
    };
    bool changed = true;
    int guard = 0;
    while (changed && ++guard < 1000) {
      changed = false;
      for (auto &blk : cfg_.blocks)
        for (auto &e : blk.succs) {
          if (auto to = passthrough(e.to); to && *to != e.to) {
            e.to = *to;
            changed = true;
          }
        }
      if (auto to = passthrough(cfg_.entry)) {
        cfg_.entry = *to;
        changed = true;
      }
    }
    // reachability + renumber
    std::vector<int> remap(cfg_.blocks.size(), -1);
    std::vector<int> order;
    std::vector<int> stack{cfg_.entry};
    remap[static_cast<size_t>(cfg_.entry)] = 0;
    order.push_back(cfg_.entry);
    while (!stack.empty()) {
      int b = stack.back();
      stack.pop_back();
      for (const CfgEdge &e : cfg_.blocks[static_cast<size_t>(b)].succs)
        if (remap[static_cast<size_t>(e.to)] < 0) {
          remap[static_cast<size_t>(e.to)] = static_cast<int>(order.size());
          order.push_back(e.to);
          stack.push_back(e.to);
        }
    }
    std::vector<BasicBlock> blocks;
    blocks.reserve(order.size());
    for (int old : order) {
      BasicBlock blk = std::move(cfg_.blocks[static_cast<size_t>(old)]);
      for (CfgEdge &e : blk.succs)
        e.to = remap[static_cast<size_t>(e.to)];
      blocks.push_back(std::move(blk));
    }
    cfg_.blocks = std::move(blocks);
    cfg_.entry = 0;
  }

  void link_preds() {
    for (size_t b = 0; b < cfg_.blocks.size(); ++b)
      for (const CfgEdge &e : cfg_.blocks[b].succs)
        cfg_.blocks[static_cast<size_t>(e.to)].preds.push_back(static_cast<int>(b));
  }

  // Iterative dominator sets over block bitsets; back edges are u -> v with
  // v dominating u, and their targets are the widen points.
  void mark_widen_points() {
    size_t n = cfg_.blocks.size();
    std::vector<std::vector<bool>> dom(n, std::vector<bool>(n, true));
    std::vector<bool> entry_only(n, false);
    entry_only[static_cast<size_t>(cfg_.entry)] = true;
    dom[static_cast<size_t>(cfg_.entry)] = entry_only;
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t b = 0; b < n; ++b) {
        if (static_cast<int>(b) == cfg_.entry)
          continue;
        std::vector<bool> nd(n, true);
        for (int p : cfg_.blocks[b].preds)
          for (size_t i = 0; i < n; ++i)
            nd[i] = nd[i] && dom[static_cast<size_t>(p)][i];
        nd[b] = true;
        if (nd != dom[b]) {
          dom[b] = nd;
          changed = true;
        }
      }
    }
    for (size_t u = 0; u < n; ++u)
      for (const CfgEdge &e : cfg_.blocks[u].succs)
        if (dom[u][static_cast<size_t>(e.to)])
          cfg_.widen_points.insert(e.to);
  }

  const Program &prog_;
  Cfg cfg_;
  int cur_ = 0;
};

} // namespace

std::string stmt_text(const Stmt &s, const ZoneState::Names &names) {
  std::ostringstream os;
  switch (s.kind) {
  case Stmt::SAssign: {
    const std::string &v = (*names)[static_cast<size_t>(s.v)];
    switch (s.rhs.kind) {
    case LinearRhs::Const:
      os << v << " := " << s.rhs.c;
      break;
    case LinearRhs::VarPlus:
      os << v << " := " << (*names)[static_cast<size_t>(s.rhs.u)];
      if (s.rhs.c > 0)
        os << " + " << s.rhs.c;
      else if (s.rhs.c < 0)
        os << " - " << -s.rhs.c;
      break;
    case LinearRhs::SelfPlus:
      os << v << " := " << v;
      if (s.rhs.c > 0)
        os << " + " << s.rhs.c;
      else if (s.rhs.c < 0)
        os << " - " << -s.rhs.c;
      break;
    case LinearRhs::Havoc:
      os << "havoc " << v;
      break;
    }
    break;
  }
  case Stmt::SAssume:
    os << "assume " << guard_text(s.guard, names);
    break;
  case Stmt::SAssert:
    os << "assert " << guard_text(s.guard, names);
    break;
  case Stmt::SNop:
    os << "nop";
    break;
  }
  return os.str();
}

Cfg build_cfg(const Program &p) {
  Builder b(p);
  return b.build();
}

} // namespace zonemin
