#include "zonemin/interval.hpp"

#include <algorithm>
#include <sstream>

namespace zonemin {

IntervalState IntervalState::top(ZoneState::Names names) {
  IntervalState s;
  s.vals_.assign(names->size(), IntervalValue{});
  s.names_ = std::move(names);
  return s;
}

IntervalState IntervalState::bottom(ZoneState::Names names) {
  IntervalState s = top(std::move(names));
  s.bottom_ = true;
  return s;
}

void IntervalState::set_value(VarId v, IntervalValue iv) {
  vals_[static_cast<size_t>(v)] = iv;
  // Sentinels are the extreme int64 values, so a plain comparison covers
  // the infinite cases too.
  if (iv.lo > iv.hi)
    bottom_ = true;
}

std::string IntervalState::dump() const {
  if (bottom_)
    return "false\n";
  std::ostringstream os;
  for (size_t v = 1; v < vals_.size(); ++v) {
    const IntervalValue &iv = vals_[v];
    os << (*names_)[v] << " in [";
    if (iv.lo == kNegInf)
      os << "-inf";
    else
      os << iv.lo;
    os << ", ";
    if (iv.hi == kPosInf)
      os << "+inf";
    else
      os << iv.hi;
    os << "]\n";
  }
  return os.str();
}

IntervalState to_intervals(const ZoneState &z) {
  if (z.is_bottom())
    return IntervalState::bottom(z.names());
  ZoneState c = z.closed();
  if (c.is_bottom())
    return IntervalState::bottom(z.names());
  IntervalState s = IntervalState::top(z.names());
  for (VarId v = 1; v < z.dim(); ++v) {
    IntervalValue iv;
    Bound hi = c.at(v, kZ0);
    Bound nlo = c.at(kZ0, v);
    if (hi.is_finite())
      iv.hi = hi.value();
    if (nlo.is_finite())
      iv.lo = -nlo.value();
    s.set_value(v, iv);
  }
  return s;
}

namespace {

IntervalValue meet_upper(IntervalValue iv, std::int64_t hi) {
  if (hi != kPosInf)
    iv.hi = std::min(iv.hi, hi);
  return iv;
}

IntervalValue meet_lower(IntervalValue iv, std::int64_t lo) {
  if (lo != kNegInf)
    iv.lo = std::max(iv.lo, lo);
  return iv;
}

// Upper/lower bound of the guard right-hand side over the current state.
std::int64_t rhs_hi(const IntervalState &s, const Guard &g) {
  return g.has_u ? ext_shift(s.value(g.u).hi, g.c) : g.c;
}
std::int64_t rhs_lo(const IntervalState &s, const Guard &g) {
  return g.has_u ? ext_shift(s.value(g.u).lo, g.c) : g.c;
}

IntervalState refine(const IntervalState &s, const Guard &g) {
  // Normalize strict comparisons to weak ones over the integers.
  Guard n = g;
  if (n.op == CmpOp::LT) {
    n.op = CmpOp::LE;
    n.c -= 1;
  } else if (n.op == CmpOp::GT) {
    n.op = CmpOp::GE;
    n.c += 1;
  }
  if (n.op == CmpOp::NE)
    return s; // only the equality side refines
  if (n.has_u && n.u == n.v) {
    // v op v + c: vacuous or infeasible, no per-variable refinement.
    bool sat = true;
    if (n.op == CmpOp::LE)
      sat = 0 <= n.c;
    else if (n.op == CmpOp::GE)
      sat = 0 >= n.c;
    else if (n.op == CmpOp::EQ)
      sat = n.c == 0;
    return sat ? s : IntervalState::bottom(s.names());
  }
  IntervalState r = s;
  if (n.op == CmpOp::LE || n.op == CmpOp::EQ) {
    r.set_value(n.v, meet_upper(r.value(n.v), rhs_hi(r, n)));
    if (n.has_u) // v <= u + c also bounds u from below
      r.set_value(n.u, meet_lower(r.value(n.u), ext_shift(r.value(n.v).lo, -n.c)));
  }
  if (n.op == CmpOp::GE || n.op == CmpOp::EQ) {
    r.set_value(n.v, meet_lower(r.value(n.v), rhs_lo(r, n)));
    if (n.has_u)
      r.set_value(n.u, meet_upper(r.value(n.u), ext_shift(r.value(n.v).hi, -n.c)));
  }
  return r;
}

} // namespace

IntervalState interval_transfer(const IntervalState &s, const Stmt &stmt) {
  if (s.is_bottom())
    return s;
  switch (stmt.kind) {
  case Stmt::SAssign: {
    IntervalState r = s;
    IntervalValue iv; // top
    switch (stmt.rhs.kind) {
    case LinearRhs::Const:
      iv = {stmt.rhs.c, stmt.rhs.c};
      break;
    case LinearRhs::VarPlus: {
      const IntervalValue &u = s.value(stmt.rhs.u);
      iv = {ext_shift(u.lo, stmt.rhs.c), ext_shift(u.hi, stmt.rhs.c)};
      break;
    }
    case LinearRhs::SelfPlus: {
      const IntervalValue &u = s.value(stmt.v);
      iv = {ext_shift(u.lo, stmt.rhs.c), ext_shift(u.hi, stmt.rhs.c)};
      break;
    }
    case LinearRhs::Havoc:
      break;
    }
    r.set_value(stmt.v, iv);
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

IntervalState interval_join_widen(const IntervalState &a, const IntervalState &b, bool widen) {
  if (a.names() != b.names() || a.dim() != b.dim())
    throw ContractError("interval join: universe mismatch");
  if (a.is_bottom())
    return b;
  if (b.is_bottom())
    return a;
  IntervalState r = a;
  for (VarId v = 1; v < a.dim(); ++v) {
    const IntervalValue &x = a.value(v);
    const IntervalValue &y = b.value(v);
    IntervalValue out;
    if (widen) {
      out.lo = y.lo < x.lo ? kNegInf : x.lo;
      out.hi = y.hi > x.hi ? kPosInf : x.hi;
    } else {
      out.lo = std::min(x.lo, y.lo);
      out.hi = std::max(x.hi, y.hi);
    }
    r.set_value(v, out);
  }
  return r;
}

bool interval_leq(const IntervalState &a, const IntervalState &b) {
  if (a.is_bottom())
    return true;
  if (b.is_bottom())
    return false;
  for (VarId v = 1; v < a.dim(); ++v) {
    const IntervalValue &x = a.value(v);
    const IntervalValue &y = b.value(v);
    if (x.lo < y.lo || x.hi > y.hi)
      return false;
  }
  return true;
}

} // namespace zonemin
