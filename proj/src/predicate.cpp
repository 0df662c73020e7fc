#include "zonemin/predicate.hpp"

#include <cmath>
#include <sstream>

namespace zonemin {

int element_of(std::int64_t x) {
  for (int i = 0; i < 7; ++i) {
    const auto &e = kPredicateElements[static_cast<size_t>(i)];
    if (e.lo <= x && x <= e.hi)
      return i;
  }
  return 6; // unreachable: the elements partition the integers
}

bool mask_contains(PredMask m, std::int64_t x) {
  return (m >> element_of(x)) & 1;
}

PredicateState PredicateState::top(ZoneState::Names names) {
  PredicateState s;
  s.masks_.assign(names->size(), kPredTop);
  s.names_ = std::move(names);
  return s;
}

PredicateState PredicateState::bottom(ZoneState::Names names) {
  PredicateState s = top(std::move(names));
  s.bottom_ = true;
  for (auto &m : s.masks_)
    m = 0;
  return s;
}

void PredicateState::set_mask(VarId v, PredMask m) {
  masks_[static_cast<size_t>(v)] = m;
  if (m == 0)
    bottom_ = true;
}

std::string PredicateState::dump() const {
  if (bottom_)
    return "false\n";
  std::ostringstream os;
  for (size_t v = 1; v < masks_.size(); ++v) {
    os << (*names_)[v] << " in {";
    bool first = true;
    for (int i = 0; i < 7; ++i)
      if ((masks_[v] >> i) & 1) {
        if (!first)
          os << ",";
        os << kPredicateElements[static_cast<size_t>(i)].label;
        first = false;
      }
    os << "}\n";
  }
  return os.str();
}

namespace {

// Closed extended range [lo, hi]; empty when lo > hi.
struct Range {
  std::int64_t lo, hi;
  bool empty() const { return lo > hi; }
  bool intersects(const Range &o) const { return !empty() && !o.empty() && lo <= o.hi && o.lo <= hi; }
};

Range elem_range(int i) {
  const auto &e = kPredicateElements[static_cast<size_t>(i)];
  return {e.lo, e.hi};
}

Range shift(Range r, std::int64_t c) { return {ext_shift(r.lo, c), ext_shift(r.hi, c)}; }

// Elements whose range intersects any of the given ranges.
PredMask abstract_ranges(const std::vector<Range> &ranges) {
  PredMask m = 0;
  for (int i = 0; i < 7; ++i)
    for (const Range &r : ranges)
      if (elem_range(i).intersects(r)) {
        m |= PredMask(1u << i);
        break;
      }
  return m;
}

std::vector<Range> mask_ranges(PredMask m) {
  std::vector<Range> out;
  for (int i = 0; i < 7; ++i)
    if ((m >> i) & 1)
      out.push_back(elem_range(i));
  return out;
}

Range mask_hull(PredMask m) {
  Range hull{kPosInf, kNegInf};
  for (int i = 0; i < 7; ++i)
    if ((m >> i) & 1) {
      hull.lo = std::min(hull.lo, elem_range(i).lo);
      hull.hi = std::max(hull.hi, elem_range(i).hi);
    }
  return hull;
}

PredicateState refine(const PredicateState &s, const Guard &g) {
  Guard n = g;
  if (n.op == CmpOp::LT) {
    n.op = CmpOp::LE;
    n.c -= 1;
  } else if (n.op == CmpOp::GT) {
    n.op = CmpOp::GE;
    n.c += 1;
  }
  if (n.op == CmpOp::NE)
    return s;
  if (n.has_u && n.u == n.v) {
    bool sat = true;
    if (n.op == CmpOp::LE)
      sat = 0 <= n.c;
    else if (n.op == CmpOp::GE)
      sat = 0 >= n.c;
    else if (n.op == CmpOp::EQ)
      sat = n.c == 0;
    return sat ? s : PredicateState::bottom(s.names());
  }
  PredicateState r = s;
  // Guard range for v from the rhs, evaluated per element hull.
  Range rhs = n.has_u ? shift(mask_hull(s.mask(n.u)), n.c) : Range{n.c, n.c};
  Range vconstraint{kNegInf, kPosInf};
  if (n.op == CmpOp::LE)
    vconstraint.hi = rhs.hi;
  else if (n.op == CmpOp::GE)
    vconstraint.lo = rhs.lo;
  else if (n.op == CmpOp::EQ)
    vconstraint = rhs;
  PredMask vm = 0;
  for (int i = 0; i < 7; ++i)
    if (((s.mask(n.v) >> i) & 1) && elem_range(i).intersects(vconstraint))
      vm |= PredMask(1u << i);
  r.set_mask(n.v, vm);
  if (n.has_u && !r.is_bottom()) {
    // Dual refinement of u: u op' v - c with the order flipped.
    Range vr = shift(mask_hull(s.mask(n.v)), -n.c);
    Range uconstraint{kNegInf, kPosInf};
    if (n.op == CmpOp::LE)
      uconstraint.lo = vr.lo; // v <= u + c  =>  u >= v - c
    else if (n.op == CmpOp::GE)
      uconstraint.hi = vr.hi;
    else if (n.op == CmpOp::EQ)
      uconstraint = vr;
    PredMask um = 0;
    for (int i = 0; i < 7; ++i)
      if (((s.mask(n.u) >> i) & 1) && elem_range(i).intersects(uconstraint))
        um |= PredMask(1u << i);
    r.set_mask(n.u, um);
  }
  return r;
}

} // namespace

PredicateState predicate_transfer(const PredicateState &s, const Stmt &stmt) {
  if (s.is_bottom())
    return s;
  switch (stmt.kind) {
  case Stmt::SAssign: {
    PredicateState r = s;
    PredMask m = kPredTop;
    switch (stmt.rhs.kind) {
    case LinearRhs::Const:
      m = abstract_ranges({Range{stmt.rhs.c, stmt.rhs.c}});
      break;
    case LinearRhs::VarPlus: {
      std::vector<Range> shifted;
      for (Range r0 : mask_ranges(s.mask(stmt.rhs.u)))
        shifted.push_back(shift(r0, stmt.rhs.c));
      m = abstract_ranges(shifted);
      break;
    }
    case LinearRhs::SelfPlus: {
      std::vector<Range> shifted;
      for (Range r0 : mask_ranges(s.mask(stmt.v)))
        shifted.push_back(shift(r0, stmt.rhs.c));
      m = abstract_ranges(shifted);
      break;
    }
    case LinearRhs::Havoc:
      break;
    }
    r.set_mask(stmt.v, m);
    return r;
  }
  case Stmt::SAssume:
    return refine(s, stmt.guard);
  case Stmt::SAssert:
  case Stmt::SNop:
    return s;
  }
  return s;
}

PredicateState predicate_join(const PredicateState &a, const PredicateState &b) {
  if (a.names() != b.names() || a.dim() != b.dim())
    throw ContractError("predicate join: universe mismatch");
  if (a.is_bottom())
    return b;
  if (b.is_bottom())
    return a;
  PredicateState r = a;
  for (VarId v = 1; v < a.dim(); ++v)
    r.set_mask(v, PredMask(a.mask(v) | b.mask(v)));
  return r;
}

bool predicate_leq(const PredicateState &a, const PredicateState &b) {
  if (a.is_bottom())
    return true;
  if (b.is_bottom())
    return false;
  for (VarId v = 1; v < a.dim(); ++v)
    if ((a.mask(v) & ~b.mask(v)) != 0)
      return false;
  return true;
}

std::vector<std::vector<std::int64_t>> predicate_gamma(const PredicateState &s,
                                                       const std::vector<VarId> &vars,
                                                       std::int64_t box) {
  double bits = static_cast<double>(vars.size()) * std::log2(static_cast<double>(2 * box + 1));
  if (bits > 24.0)
    throw GuardError("predicate_gamma: search space exceeds 24-bit guard");
  std::vector<std::vector<std::int64_t>> out;
  if (s.is_bottom())
    return out;
  if (vars.empty()) {
    out.push_back({});
    return out;
  }
  std::vector<std::int64_t> point(vars.size(), -box);
  while (true) {
    bool ok = true;
    for (size_t i = 0; i < vars.size() && ok; ++i)
      ok = mask_contains(s.mask(vars[i]), point[i]);
    if (ok)
      out.push_back(point);
    int i = static_cast<int>(vars.size()) - 1;
    while (i >= 0 && point[static_cast<size_t>(i)] == box) {
      point[static_cast<size_t>(i)] = -box;
      --i;
    }
    if (i < 0)
      break;
    ++point[static_cast<size_t>(i)];
  }
  return out;
}

} // namespace zonemin
