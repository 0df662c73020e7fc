#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "zonemin/cfg.hpp"
#include "zonemin/interval.hpp"
#include "zonemin/minimize.hpp"
#include "zonemin/predicate.hpp"
#include "zonemin/zone.hpp"

namespace zonemin {

enum class DomainKind { Zones, Intervals, Predicates };
const char *to_string(DomainKind d);

// Program points: (block, 0) is the block-entry state (emitted for the
// entry block and for merge/widen blocks), (block, i >= 1) the state after
// statement i-1.
struct PointKey {
  int block = 0;
  int index = 0;
  auto operator<=>(const PointKey &) const = default;
};

struct PointInfo {
  PointKey key;
  std::string label;
  int branch_group = -1; // >= 0 for the two assume points of one conditional
  bool is_assert = false;
};

struct Slices {
  Subgraph fs, cc, nn, mn;
};

// One applied zone step. `before` is the meet baseline: the incoming state
// for assumes and translations, the post-havoc state for assignments.
struct StepRecord {
  enum Kind { Transfer, Merge, Widen } kind = Transfer;
  PointKey at;
  ZoneState before;
  ZoneState after;
  DeltaSet delta;
  std::vector<std::tuple<VarId, VarId, Bound>> written;
  Slices slices;
};

struct ZonePointRecord {
  ZoneState state; // closed
  DeltaSet delta;  // of the step that produced this state
  Slices slices;
};

struct TransferOut {
  ZoneState out;      // closed
  ZoneState baseline; // closed; N1 of the recorded step
  DeltaSet delta;
  std::vector<std::tuple<VarId, VarId, Bound>> written;
  // The variables this statement actually updates: the assigned variable
  // for assignments, the restricted endpoint of each written edge for
  // guards. Drives the slicing; the full delta stays in `delta`.
  std::set<VarId> updated;
};

// Zone transfer with syntactic write-set capture. `z` must be closed.
TransferOut transfer_with_delta(const ZoneState &z, const Stmt &stmt);

// The variable set handed to CC/NN for a transfer delta: the restricted
// variable of each written edge; plain havocs fall back to dv.
std::set<VarId> slicing_vars(const DeltaSet &delta, bool merge_style);

// Slices for one step. For transfer steps, `updated` names the variables
// the statement wrote and `before` (the closed meet baseline) attributes
// closure-propagated interval changes: a variable whose Z0 row or column
// moved joins the sliced delta even when the relational path that carried
// the change was reduced away as spurious.
Slices compute_slices(const ZoneState &closed_state, const DeltaSet &delta, bool merge_style,
                      const ZoneState *before = nullptr,
                      const std::set<VarId> *updated = nullptr);

struct AnalysisResult {
  DomainKind domain = DomainKind::Zones;
  std::vector<PointInfo> points;

  std::map<PointKey, ZonePointRecord> zone_at;
  std::map<PointKey, IntervalState> interval_at;
  std::map<PointKey, PredicateState> predicate_at;

  // Every merge/widen applied during iteration plus one Transfer record per
  // statement from the final recording pass.
  std::vector<StepRecord> steps;

  // Stable block-entry states, for fixpoint checks.
  std::map<int, ZoneState> zone_in;
  std::map<int, IntervalState> interval_in;
  std::map<int, PredicateState> predicate_in;

  int max_block_visits = 0;
};

// Worklist fixpoint: entry state is top over the declared variables; merge
// points join, widen points join twice and widen afterwards. `trace`
// receives one `visit block=K domain=D changed=b` line per worklist step.
AnalysisResult run_fixpoint(const Cfg &cfg, DomainKind domain, std::ostream *trace = nullptr);

// The program point holding the state flowing INTO statement `stmt_index`
// of `block`: the previous statement's point, the block-entry point, or the
// incoming edge's assume point for single-predecessor blocks.
PointKey in_point_of(const Cfg &cfg, int block, int stmt_index);

} // namespace zonemin
