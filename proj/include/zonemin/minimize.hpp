#pragma once

#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "zonemin/zone.hpp"

namespace zonemin {

// A slice of a zone: the selected variables plus the inequalities kept for
// them, drawn from the state the slice was computed on. Z0 never appears
// in `vars`; it may appear as an edge endpoint.
struct Subgraph {
  std::set<VarId> vars;
  std::set<std::tuple<VarId, VarId, std::int64_t>> edges;

  std::set<std::pair<VarId, VarId>> edge_ids() const;
  bool contains_edge(VarId s, VarId t) const;

  // Header line `vars: a b ...` (name-sorted), then one line per edge in
  // the zone dump format, sorted by (row, col).
  std::string serialize(const ZoneState::Names &names) const;

  bool operator==(const Subgraph &) const = default;
};

enum class MinMethod { FS, CC, NN, MN };

const char *to_string(MinMethod m);

// Drop every direct edge (s, t) that the path through Z0 already implies:
// (s,t) >= (s,Z0) + (Z0,t) under saturating arithmetic. Candidates are the
// variables with at least one Z0-incident edge; edges touching Z0 are never
// removed. Semantics are unchanged.
ZoneState remove_spurious(const ZoneState &z);

// Edge ids that remove_spurious would drop (finite entries only).
std::set<std::pair<VarId, VarId>> spurious_edge_ids(const ZoneState &z);

// Undirected reachability from dv with Z0 pre-marked visited. Edges: every
// finite entry with at least one endpoint in the discovered set.
Subgraph connected_components(const ZoneState &g, const std::set<VarId> &dv);

// Directional reachability from dv (forward along edges and backward along
// reversed edges, never expanding through Z0). Edges: finite entries with
// both endpoints in the discovered set or Z0. DFS formulation.
Subgraph node_neighbors_arbitrary(const ZoneState &g, const std::set<VarId> &dv);

// Same contract for spurious-reduced closures of fully closed states, as a
// frontier/BFS expansion. On such inputs the frontier usually stabilizes
// after a single round of neighbor lookups.
Subgraph node_neighbors_closed(const ZoneState &g, const std::set<VarId> &dv);

// The variable kept from one updated edge: the non-Z0 endpoint for interval
// updates, otherwise the source (the endpoint the new constraint restricts).
std::set<VarId> updated_vars(const std::set<std::pair<VarId, VarId>> &de);

// Filter the updated edges down to their restricted variables, then take
// node neighbors of that set.
Subgraph min_neighbors(const ZoneState &g, const std::set<std::pair<VarId, VarId>> &de);

// Whole spurious-reduced state as a slice; vars = every program variable.
Subgraph full_state(const ZoneState &g);

// Entry point: spurious reduction followed by the selected method.
// FS ignores dv/de; MN requires nonempty de; the others nonempty dv.
// A Bottom input yields the empty subgraph.
Subgraph min_changed_set(const ZoneState &z, const std::set<VarId> &dv,
                         const std::set<std::pair<VarId, VarId>> &de, MinMethod method);

// Redundancy elimination over arbitrary intermediate paths, used as the
// reference reduction: repeatedly drop an edge whenever the remaining graph
// still entails it, visiting relational edges before interval edges so that
// the Z0-implied edges always go first. Semantics preserved; the removed
// set always contains everything remove_spurious removes.
ZoneState larsen_reduce(const ZoneState &z);

} // namespace zonemin
