#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zonemin/bound.hpp"

namespace zonemin {

// Variables are dense indices into the constraint matrix. Index 0 is
// reserved for the zero variable, which is pinned to the value 0 so that
// interval constraints fit the difference template (x <= b as x - Z0 <= b).
using VarId = int;
inline constexpr VarId kZ0 = 0;

struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Updated-variable / updated-edge sets produced by one transfer, merge or
// widen step. Invariant: every non-Z0 endpoint of an edge in `de` is in `dv`.
struct DeltaSet {
  std::set<VarId> dv;
  std::set<std::pair<VarId, VarId>> de;

  bool empty() const { return dv.empty() && de.empty(); }
};

// A conjunction of difference constraints over {Z0, v1..vn} stored as a
// dense matrix: m[s][t] = b encodes s - t <= b, Bound::top() is "no edge".
// States are values; every operation returns a fresh state.
class ZoneState {
public:
  using Names = std::shared_ptr<const std::vector<std::string>>;

  // Empty placeholder; records default-construct through it. Not a valid
  // analysis state until reassigned.
  ZoneState() = default;

  // Unconstrained state over `names` (names[0] is ignored and printed "Z0").
  static ZoneState top(Names names);
  // Canonical infeasible state of the same dimension.
  static ZoneState bottom(Names names);

  static Names make_names(const std::vector<std::string> &vars);

  int dim() const { return dim_; }
  bool is_bottom() const { return bottom_; }
  bool closed_flag() const { return closed_; }

  Bound at(VarId s, VarId t) const { return m_[index(s, t)]; }
  void set(VarId s, VarId t, Bound b); // clears the closed flag

  const std::string &name(VarId v) const;
  const Names &names() const { return names_; }

  // All-pairs shortest-path closure; detects infeasibility. Idempotent.
  ZoneState closed() const;

  // Drop every constraint mentioning v (v != Z0). Input should be closed
  // for the projection semantics to hold; the result keeps the closed flag.
  ZoneState forgotten(VarId v) const;

  // m[s][t] := min(m[s][t], b). Reports the edge in the delta only if the
  // entry strictly tightened. Re-closes when the input was closed.
  std::pair<ZoneState, DeltaSet> met(VarId s, VarId t, Bound b) const;

  bool operator==(const ZoneState &o) const = default;

  // One line per finite off-diagonal entry, sorted by (row, col):
  //   name(s) - name(t) <= b
  std::string dump() const;

private:
  ZoneState(int dim, Names names);
  int index(VarId s, VarId t) const { return s * dim_ + t; }
  void check_var(VarId v) const;

  int dim_ = 0;
  bool closed_ = false;
  bool bottom_ = false;
  std::vector<Bound> m_;
  Names names_;

  friend ZoneState join(const ZoneState &, const ZoneState &);
  friend ZoneState widen(const ZoneState &, const ZoneState &);
  friend bool zone_equals(const ZoneState &, const ZoneState &);
};

// Right-hand sides accepted by assignments. Anything else degrades to Havoc.
struct LinearRhs {
  enum Kind { Const, VarPlus, SelfPlus, Havoc } kind = Havoc;
  VarId u = kZ0;       // VarPlus only
  std::int64_t c = 0;  // Const / VarPlus / SelfPlus

  static LinearRhs constant(std::int64_t c) { return {Const, kZ0, c}; }
  static LinearRhs var_plus(VarId u, std::int64_t c) { return {VarPlus, u, c}; }
  static LinearRhs self_plus(std::int64_t c) { return {SelfPlus, kZ0, c}; }
  static LinearRhs havoc() { return {Havoc, kZ0, 0}; }
};

// v := rhs. Fresh targets go through forget+meet+close, v := v + c is the
// matrix translation, havoc is plain forget.
std::pair<ZoneState, DeltaSet> assign(const ZoneState &z, VarId v, const LinearRhs &rhs);

// Pointwise least upper bound of two closed states; result is closed.
ZoneState join(const ZoneState &a, const ZoneState &b);

// Standard zone widening: keep entries of `a` that `b` does not exceed,
// drop the rest to top. The result is intentionally left non-closed.
ZoneState widen(const ZoneState &a, const ZoneState &b);

// Semantic equality: closes both sides and compares matrices.
bool zone_equals(const ZoneState &a, const ZoneState &b);

// Exact concretization over [-B, B]^(dim-1) with Z0 = 0, in lexicographic
// order. Refuses when the search space exceeds ~24 bits.
std::vector<std::vector<std::int64_t>> enumerate_box(const ZoneState &z, std::int64_t box);

// True when `point` (values for v1..vn) satisfies every finite constraint.
bool box_contains(const ZoneState &z, const std::vector<std::int64_t> &point);

} // namespace zonemin
