#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "zonemin/ast.hpp"
#include "zonemin/interval.hpp"
#include "zonemin/zone.hpp"

namespace zonemin {

// The seven disjoint elements partitioning the integers. The half-open
// ranges are stored as closed integer ranges so membership is unambiguous.
struct PredicateElement {
  std::int64_t lo; // kNegInf for the leftmost element
  std::int64_t hi; // kPosInf for the rightmost element
  const char *label;
};

inline constexpr std::array<PredicateElement, 7> kPredicateElements = {{
    {kNegInf, -5, "E1"}, // (-inf, -5]
    {-4, -2, "E2"},      // (-5, -2]
    {-1, -1, "E3"},
    {0, 0, "E4"},
    {1, 1, "E5"},
    {2, 4, "E6"},        // [2, 5)
    {5, kPosInf, "E7"},  // [5, +inf)
}};

using PredMask = std::uint8_t; // bit i set = element i+1 present
inline constexpr PredMask kPredTop = 0x7F;

int element_of(std::int64_t x); // index 0..6 of the unique containing element
bool mask_contains(PredMask m, std::int64_t x);

// Per-variable element subsets; an empty subset anywhere means Bottom.
class PredicateState {
public:
  static PredicateState top(ZoneState::Names names);
  static PredicateState bottom(ZoneState::Names names);

  bool is_bottom() const { return bottom_; }
  int dim() const { return static_cast<int>(masks_.size()); }
  PredMask mask(VarId v) const { return masks_[static_cast<size_t>(v)]; }
  void set_mask(VarId v, PredMask m);

  const ZoneState::Names &names() const { return names_; }

  // `v in {E1,E3}` per line, element indices sorted.
  std::string dump() const;

  bool operator==(const PredicateState &) const = default;

private:
  bool bottom_ = false;
  std::vector<PredMask> masks_; // slot 0 unused
  ZoneState::Names names_;
};

PredicateState predicate_transfer(const PredicateState &s, const Stmt &stmt);
PredicateState predicate_join(const PredicateState &a, const PredicateState &b);

bool predicate_leq(const PredicateState &a, const PredicateState &b);

// Concretization of the selected variables over [-B, B], lexicographic.
std::vector<std::vector<std::int64_t>> predicate_gamma(const PredicateState &s,
                                                       const std::vector<VarId> &vars,
                                                       std::int64_t box);

} // namespace zonemin
