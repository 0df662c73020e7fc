#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zonemin/ast.hpp"

namespace zonemin {

// Conditional out-edges carry the branch assume; fall edges carry none.
struct CfgEdge {
  enum Label { Then, Else, Fall } label = Fall;
  int to = 0;
  std::optional<Stmt> assume;
};

struct BasicBlock {
  std::vector<Stmt> stmts;
  std::vector<CfgEdge> succs;
  std::vector<int> preds;
};

struct Cfg {
  std::string name;
  std::vector<std::string> decls;
  ZoneState::Names names; // Z0 + decls, aligned with VarIds
  std::vector<BasicBlock> blocks;
  int entry = 0;
  std::set<int> widen_points; // back-edge targets (loop headers)
  int branch_groups = 0;

  int num_vars() const { return static_cast<int>(decls.size()); }
  bool is_merge(int b) const { return blocks[static_cast<size_t>(b)].preds.size() >= 2; }
};

// Lower the structured AST: blocks split at branches and loop heads, the
// two out-edges of a conditional carrying assume(g) / assume(not g). Empty
// pass-through blocks are folded away. Back-edge targets (per dominator
// analysis) become widen points.
Cfg build_cfg(const Program &p);

std::string stmt_text(const Stmt &s, const ZoneState::Names &names);

} // namespace zonemin
