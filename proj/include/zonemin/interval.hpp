#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zonemin/ast.hpp"
#include "zonemin/zone.hpp"

namespace zonemin {

// Extended integers for interval ends. Sentinels, with saturating shifts.
inline constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
inline constexpr std::int64_t kPosInf = std::numeric_limits<std::int64_t>::max();

inline std::int64_t ext_shift(std::int64_t a, std::int64_t c) {
  if (a == kNegInf || a == kPosInf)
    return a;
  return a + c;
}

struct IntervalValue {
  std::int64_t lo = kNegInf;
  std::int64_t hi = kPosInf;

  bool is_top() const { return lo == kNegInf && hi == kPosInf; }
  bool contains(std::int64_t x) const { return lo <= x && x <= hi; }
  bool operator==(const IntervalValue &) const = default;
};

// Per-variable ranges for v1..vn (index 0 unused), or Bottom.
class IntervalState {
public:
  static IntervalState top(ZoneState::Names names);
  static IntervalState bottom(ZoneState::Names names);

  bool is_bottom() const { return bottom_; }
  int dim() const { return static_cast<int>(vals_.size()); }
  const IntervalValue &value(VarId v) const { return vals_[static_cast<size_t>(v)]; }
  void set_value(VarId v, IntervalValue iv);

  const ZoneState::Names &names() const { return names_; }

  // `v in [lo, hi]` per line; infinities printed as -inf / +inf.
  std::string dump() const;

  bool operator==(const IntervalState &) const = default;

private:
  bool bottom_ = false;
  std::vector<IntervalValue> vals_; // size dim, slot 0 unused
  ZoneState::Names names_;
};

// Per-variable bounds read off a closed zone: hi = m[v][Z0], lo = -m[Z0][v].
IntervalState to_intervals(const ZoneState &z);

IntervalState interval_transfer(const IntervalState &s, const Stmt &stmt);
IntervalState interval_join_widen(const IntervalState &a, const IntervalState &b, bool widen);

bool interval_leq(const IntervalState &a, const IntervalState &b);

} // namespace zonemin
