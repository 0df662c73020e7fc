#include "zonemin/minimize.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace zonemin {

const char *to_string(MinMethod m) {
  switch (m) {
  case MinMethod::FS: return "FS";
  case MinMethod::CC: return "CC";
  case MinMethod::NN: return "NN";
  case MinMethod::MN: return "MN";
  }
  return "?";
}

std::set<std::pair<VarId, VarId>> Subgraph::edge_ids() const {
  std::set<std::pair<VarId, VarId>> ids;
  for (auto &[s, t, b] : edges)
    ids.insert({s, t});
  return ids;
}

bool Subgraph::contains_edge(VarId s, VarId t) const {
  for (auto &[es, et, b] : edges)
    if (es == s && et == t)
      return true;
  return false;
}

std::string Subgraph::serialize(const ZoneState::Names &names) const {
  std::ostringstream os;
  std::vector<std::string> vnames;
  for (VarId v : vars)
    vnames.push_back((*names)[static_cast<size_t>(v)]);
  std::sort(vnames.begin(), vnames.end());
  os << "vars:";
  for (auto &n : vnames)
    os << " " << n;
  os << "\n";
  std::set<std::tuple<VarId, VarId, std::int64_t>> sorted(edges.begin(), edges.end());
  for (auto &[s, t, b] : sorted)
    os << (*names)[static_cast<size_t>(s)] << " - " << (*names)[static_cast<size_t>(t)]
       << " <= " << b << "\n";
  return os.str();
}

std::set<std::pair<VarId, VarId>> spurious_edge_ids(const ZoneState &z) {
  std::set<std::pair<VarId, VarId>> out;
  if (z.is_bottom())
    return out;
  std::vector<VarId> candidates;
  for (VarId v = 1; v < z.dim(); ++v)
    if (z.at(v, kZ0).is_finite() || z.at(kZ0, v).is_finite())
      candidates.push_back(v);
  for (VarId s : candidates)
    for (VarId t : candidates) {
      if (s == t)
        continue;
      Bound direct = z.at(s, t);
      if (direct.is_finite() && direct >= z.at(s, kZ0) + z.at(kZ0, t))
        out.insert({s, t});
    }
  return out;
}

ZoneState remove_spurious(const ZoneState &z) {
  if (z.is_bottom())
    return z;
  ZoneState r = z;
  for (auto &[s, t] : spurious_edge_ids(z))
    r.set(s, t, Bound::top());
  return r;
}

namespace {

void check_dv(const ZoneState &g, const std::set<VarId> &dv) {
  if (dv.empty())
    throw ContractError("minimization requires a nonempty variable set");
  for (VarId v : dv) {
    if (v == kZ0)
      throw ContractError("Z0 cannot be an updated variable");
    if (v < 0 || v >= g.dim())
      throw ContractError("updated variable out of range");
  }
}

// Finite entries with both endpoints in vars or Z0.
std::set<std::tuple<VarId, VarId, std::int64_t>> induced_edges(const ZoneState &g,
                                                               const std::set<VarId> &vars) {
  std::set<std::tuple<VarId, VarId, std::int64_t>> edges;
  auto member = [&](VarId v) { return v == kZ0 || vars.count(v) > 0; };
  for (VarId s = 0; s < g.dim(); ++s)
    for (VarId t = 0; t < g.dim(); ++t) {
      if (s == t)
        continue;
      Bound b = g.at(s, t);
      if (b.is_finite() && member(s) && member(t))
        edges.insert({s, t, b.value()});
    }
  return edges;
}

} // namespace

Subgraph connected_components(const ZoneState &g, const std::set<VarId> &dv) {
  check_dv(g, dv);
  Subgraph out;
  if (g.is_bottom())
    return out;
  std::vector<bool> visited(static_cast<size_t>(g.dim()), false);
  visited[kZ0] = true; // never discover paths through the zero node
  std::vector<VarId> stack(dv.begin(), dv.end());
  for (VarId v : stack)
    visited[static_cast<size_t>(v)] = true;
  while (!stack.empty()) {
    VarId v = stack.back();
    stack.pop_back();
    out.vars.insert(v);
    for (VarId w = 0; w < g.dim(); ++w) {
      if (visited[static_cast<size_t>(w)])
        continue;
      if (g.at(v, w).is_finite() || g.at(w, v).is_finite()) {
        visited[static_cast<size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  for (VarId s = 0; s < g.dim(); ++s)
    for (VarId t = 0; t < g.dim(); ++t) {
      if (s == t)
        continue;
      Bound b = g.at(s, t);
      if (b.is_finite() && (out.vars.count(s) || out.vars.count(t)))
        out.edges.insert({s, t, b.value()});
    }
  return out;
}

namespace {

// Directional reach sets with the zero node treated as a sink: it can be
// reached but never expanded.
void reach_dfs(const ZoneState &g, VarId from, bool forward, std::vector<bool> &seen) {
  if (seen[static_cast<size_t>(from)])
    return;
  seen[static_cast<size_t>(from)] = true;
  if (from == kZ0)
    return;
  for (VarId w = 0; w < g.dim(); ++w) {
    if (w == from)
      continue;
    Bound b = forward ? g.at(from, w) : g.at(w, from);
    if (b.is_finite())
      reach_dfs(g, w, forward, seen);
  }
}

Subgraph neighbors_from_vars(const ZoneState &g, const std::set<VarId> &vars) {
  Subgraph out;
  out.vars = vars;
  out.edges = induced_edges(g, vars);
  return out;
}

} // namespace

Subgraph node_neighbors_arbitrary(const ZoneState &g, const std::set<VarId> &dv) {
  check_dv(g, dv);
  if (g.is_bottom())
    return {};
  std::vector<bool> fwd(static_cast<size_t>(g.dim()), false);
  std::vector<bool> bwd(static_cast<size_t>(g.dim()), false);
  for (VarId v : dv) {
    reach_dfs(g, v, true, fwd);
    reach_dfs(g, v, false, bwd);
  }
  std::set<VarId> vars;
  for (VarId v = 1; v < g.dim(); ++v)
    if (fwd[static_cast<size_t>(v)] || bwd[static_cast<size_t>(v)])
      vars.insert(v);
  return neighbors_from_vars(g, vars);
}

Subgraph node_neighbors_closed(const ZoneState &g, const std::set<VarId> &dv) {
  check_dv(g, dv);
  if (g.is_bottom())
    return {};
  // Frontier expansion along successor and predecessor edges separately.
  std::vector<bool> fwd(static_cast<size_t>(g.dim()), false);
  std::vector<bool> bwd(static_cast<size_t>(g.dim()), false);
  std::vector<VarId> ffront(dv.begin(), dv.end());
  std::vector<VarId> bfront(dv.begin(), dv.end());
  for (VarId v : dv) {
    fwd[static_cast<size_t>(v)] = true;
    bwd[static_cast<size_t>(v)] = true;
  }
  while (!ffront.empty()) {
    std::vector<VarId> next;
    for (VarId v : ffront)
      for (VarId w = 0; w < g.dim(); ++w)
        if (w != v && !fwd[static_cast<size_t>(w)] && g.at(v, w).is_finite()) {
          fwd[static_cast<size_t>(w)] = true;
          if (w != kZ0)
            next.push_back(w);
        }
    ffront = std::move(next);
  }
  while (!bfront.empty()) {
    std::vector<VarId> next;
    for (VarId v : bfront)
      for (VarId w = 0; w < g.dim(); ++w)
        if (w != v && !bwd[static_cast<size_t>(w)] && g.at(w, v).is_finite()) {
          bwd[static_cast<size_t>(w)] = true;
          if (w != kZ0)
            next.push_back(w);
        }
    bfront = std::move(next);
  }
  std::set<VarId> vars;
  for (VarId v = 1; v < g.dim(); ++v)
    if (fwd[static_cast<size_t>(v)] || bwd[static_cast<size_t>(v)])
      vars.insert(v);
  return neighbors_from_vars(g, vars);
}

std::set<VarId> updated_vars(const std::set<std::pair<VarId, VarId>> &de) {
  std::set<VarId> vars;
  for (auto &[s, t] : de) {
    if (s == kZ0)
      vars.insert(t);
    else
      vars.insert(s); // covers both (s, Z0) and the two-variable case
  }
  return vars;
}

Subgraph min_neighbors(const ZoneState &g, const std::set<std::pair<VarId, VarId>> &de) {
  if (de.empty())
    throw ContractError("min_neighbors requires a nonempty edge set");
  if (g.is_bottom())
    return {};
  std::set<VarId> vars = updated_vars(de);
  return g.closed_flag() ? node_neighbors_closed(g, vars) : node_neighbors_arbitrary(g, vars);
}

Subgraph full_state(const ZoneState &g) {
  Subgraph out;
  if (g.is_bottom())
    return out;
  for (VarId v = 1; v < g.dim(); ++v)
    out.vars.insert(v);
  for (VarId s = 0; s < g.dim(); ++s)
    for (VarId t = 0; t < g.dim(); ++t) {
      if (s == t)
        continue;
      Bound b = g.at(s, t);
      if (b.is_finite())
        out.edges.insert({s, t, b.value()});
    }
  return out;
}

Subgraph min_changed_set(const ZoneState &z, const std::set<VarId> &dv,
                         const std::set<std::pair<VarId, VarId>> &de, MinMethod method) {
  if (z.is_bottom())
    return {};
  bool was_closed = z.closed_flag();
  ZoneState g = remove_spurious(z);
  switch (method) {
  case MinMethod::FS:
    return full_state(g);
  case MinMethod::CC:
    return connected_components(g, dv);
  case MinMethod::NN:
    return was_closed ? node_neighbors_closed(g, dv) : node_neighbors_arbitrary(g, dv);
  case MinMethod::MN:
    if (de.empty())
      throw ContractError("MN requires a nonempty updated-edge set");
    return was_closed ? node_neighbors_closed(g, updated_vars(de))
                      : node_neighbors_arbitrary(g, updated_vars(de));
  }
  return {};
}

namespace {

// Shortest s..t distance over the kept edges, skipping the edge (s, t)
// itself. Bellman-Ford; dimensions here are tiny.
Bound residual_distance(const ZoneState &g, const std::vector<std::vector<bool>> &kept, VarId s,
                        VarId t) {
  int n = g.dim();
  std::vector<Bound> dist(static_cast<size_t>(n), Bound::top());
  dist[static_cast<size_t>(s)] = Bound::of(0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (VarId a = 0; a < n; ++a) {
      if (dist[static_cast<size_t>(a)].is_top())
        continue;
      for (VarId b = 0; b < n; ++b) {
        if (a == b || !kept[static_cast<size_t>(a)][static_cast<size_t>(b)])
          continue;
        if (a == s && b == t)
          continue;
        Bound cand = dist[static_cast<size_t>(a)] + g.at(a, b);
        if (cand < dist[static_cast<size_t>(b)]) {
          dist[static_cast<size_t>(b)] = cand;
          changed = true;
        }
      }
    }
    if (!changed)
      break;
  }
  return dist[static_cast<size_t>(t)];
}

} // namespace

ZoneState larsen_reduce(const ZoneState &z) {
  if (z.is_bottom())
    return z;
  ZoneState g = z.closed();
  if (g.is_bottom())
    return g;
  int n = g.dim();
  std::vector kept(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
  std::vector<std::pair<VarId, VarId>> order;
  for (VarId s = 0; s < n; ++s)
    for (VarId t = 0; t < n; ++t)
      if (s != t && g.at(s, t).is_finite()) {
        kept[static_cast<size_t>(s)][static_cast<size_t>(t)] = true;
        if (s != kZ0 && t != kZ0)
          order.push_back({s, t}); // relational edges first
      }
  for (VarId s = 0; s < n; ++s)
    for (VarId t = 0; t < n; ++t)
      if (s != t && g.at(s, t).is_finite() && (s == kZ0 || t == kZ0))
        order.push_back({s, t});
  ZoneState r = g;
  for (auto &[s, t] : order) {
    if (residual_distance(r, kept, s, t) <= r.at(s, t)) {
      kept[static_cast<size_t>(s)][static_cast<size_t>(t)] = false;
      r.set(s, t, Bound::top());
    }
  }
  return r;
}

} // namespace zonemin
