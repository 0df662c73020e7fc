#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace zonemin {

// Weight of a difference constraint `s - t <= b`. Either a finite integer
// or top(), which stands for the absence of a constraint (+infinity).
// Arithmetic saturates: top() + x == top().
class Bound {
public:
  constexpr Bound() : v_(kTop) {}

  static constexpr Bound top() { return Bound(); }
  static constexpr Bound of(std::int64_t b) { return Bound(b); }

  constexpr bool is_top() const { return v_ == kTop; }
  constexpr bool is_finite() const { return v_ != kTop; }

  // Only valid on finite bounds.
  constexpr std::int64_t value() const { return v_; }

  friend constexpr Bound operator+(Bound a, Bound b) {
    if (a.is_top() || b.is_top())
      return top();
    return of(a.v_ + b.v_);
  }

  // Pointwise order with top() as the greatest element.
  friend constexpr bool operator<=(Bound a, Bound b) {
    if (b.is_top())
      return true;
    if (a.is_top())
      return false;
    return a.v_ <= b.v_;
  }
  friend constexpr bool operator<(Bound a, Bound b) { return a <= b && !(b <= a); }
  friend constexpr bool operator>=(Bound a, Bound b) { return b <= a; }
  friend constexpr bool operator==(Bound a, Bound b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(Bound a, Bound b) { return a.v_ != b.v_; }

  static constexpr Bound min(Bound a, Bound b) { return a <= b ? a : b; }
  static constexpr Bound max(Bound a, Bound b) { return a <= b ? b : a; }

  std::string str() const { return is_top() ? "T" : std::to_string(v_); }

private:
  static constexpr std::int64_t kTop = std::numeric_limits<std::int64_t>::max();
  explicit constexpr Bound(std::int64_t v) : v_(v) {}
  std::int64_t v_;
};

} // namespace zonemin
