#include "zonemin/zone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zonemin {

ZoneState::ZoneState(int dim, Names names)
    : dim_(dim), m_(static_cast<size_t>(dim) * dim, Bound::top()), names_(std::move(names)) {
  for (int i = 0; i < dim_; ++i)
    m_[index(i, i)] = Bound::of(0);
}

ZoneState::Names ZoneState::make_names(const std::vector<std::string> &vars) {
  auto all = std::make_shared<std::vector<std::string>>();
  all->push_back("Z0");
  all->insert(all->end(), vars.begin(), vars.end());
  return all;
}

ZoneState ZoneState::top(Names names) {
  int d = static_cast<int>(names->size());
  ZoneState z(d, std::move(names));
  z.closed_ = true;
  return z;
}

ZoneState ZoneState::bottom(Names names) {
  int d = static_cast<int>(names->size());
  ZoneState z(d, std::move(names));
  z.bottom_ = true;
  z.closed_ = true;
  return z;
}

void ZoneState::check_var(VarId v) const {
  if (v < 0 || v >= dim_)
    throw ContractError("variable index out of range");
}

const std::string &ZoneState::name(VarId v) const {
  check_var(v);
  return (*names_)[static_cast<size_t>(v)];
}

void ZoneState::set(VarId s, VarId t, Bound b) {
  check_var(s);
  check_var(t);
  m_[index(s, t)] = b;
  closed_ = false;
}

ZoneState ZoneState::closed() const {
  if (bottom_ || closed_)
    return *this;
  ZoneState r = *this;
  // Floyd-Warshall over the saturating bound semiring.
  for (int k = 0; k < dim_; ++k) {
    for (int i = 0; i < dim_; ++i) {
      Bound ik = r.m_[r.index(i, k)];
      if (ik.is_top())
        continue;
      for (int j = 0; j < dim_; ++j) {
        Bound cand = ik + r.m_[r.index(k, j)];
        if (cand < r.m_[r.index(i, j)])
          r.m_[r.index(i, j)] = cand;
      }
    }
  }
  for (int i = 0; i < dim_; ++i) {
    if (r.m_[r.index(i, i)] < Bound::of(0))
      return bottom(names_);
    r.m_[r.index(i, i)] = Bound::of(0);
  }
  r.closed_ = true;
  return r;
}

ZoneState ZoneState::forgotten(VarId v) const {
  if (v == kZ0)
    throw ContractError("cannot forget the zero variable");
  check_var(v);
  if (bottom_)
    return *this;
  ZoneState r = *this;
  for (int i = 0; i < dim_; ++i) {
    if (i == v)
      continue;
    r.m_[r.index(v, i)] = Bound::top();
    r.m_[r.index(i, v)] = Bound::top();
  }
  // Forgetting a row/column of a closed matrix keeps it closed.
  r.closed_ = closed_;
  return r;
}

std::pair<ZoneState, DeltaSet> ZoneState::met(VarId s, VarId t, Bound b) const {
  if (s == t)
    throw ContractError("meet_edge requires distinct endpoints");
  check_var(s);
  check_var(t);
  DeltaSet delta;
  if (bottom_)
    return {*this, delta};
  ZoneState r = *this;
  if (b < r.m_[r.index(s, t)]) {
    r.m_[r.index(s, t)] = b;
    delta.de.insert({s, t});
    if (s != kZ0)
      delta.dv.insert(s);
    if (t != kZ0)
      delta.dv.insert(t);
    bool was_closed = closed_;
    r.closed_ = false;
    if (was_closed)
      r = r.closed();
  }
  return {r, delta};
}

std::pair<ZoneState, DeltaSet> assign(const ZoneState &z, VarId v, const LinearRhs &rhs) {
  if (v == kZ0)
    throw ContractError("cannot assign the zero variable");
  if (z.is_bottom())
    return {z, {}};
  switch (rhs.kind) {
  case LinearRhs::Const: {
    ZoneState base = z.closed().forgotten(v);
    auto [z1, d1] = base.met(v, kZ0, Bound::of(rhs.c));
    auto [z2, d2] = z1.met(kZ0, v, Bound::of(-rhs.c));
    DeltaSet delta;
    delta.dv.insert(v);
    for (auto &e : d1.de) delta.de.insert(e);
    for (auto &e : d2.de) delta.de.insert(e);
    return {z2.closed(), delta};
  }
  case LinearRhs::VarPlus: {
    if (rhs.u == v)
      return assign(z, v, LinearRhs::self_plus(rhs.c));
    ZoneState base = z.closed().forgotten(v);
    auto [z1, d1] = base.met(v, rhs.u, Bound::of(rhs.c));
    auto [z2, d2] = z1.met(rhs.u, v, Bound::of(-rhs.c));
    DeltaSet delta;
    delta.dv.insert(v);
    for (auto &d : {d1, d2}) {
      for (auto &e : d.de) {
        delta.de.insert(e);
        if (e.first != kZ0) delta.dv.insert(e.first);
        if (e.second != kZ0) delta.dv.insert(e.second);
      }
    }
    return {z2.closed(), delta};
  }
  case LinearRhs::SelfPlus: {
    if (rhs.c == 0)
      return {z.closed(), {}};
    ZoneState r = z.closed();
    DeltaSet delta;
    delta.dv.insert(v);
    for (int i = 0; i < r.dim(); ++i) {
      if (i == v)
        continue;
      Bound out = r.at(v, i); // (v', i): shift up by c
      if (out.is_finite()) {
        r.set(v, i, Bound::of(out.value() + rhs.c));
        delta.de.insert({v, i});
        if (i != kZ0)
          delta.dv.insert(i);
      }
      Bound in = r.at(i, v); // (i, v'): shift down by c
      if (in.is_finite()) {
        r.set(i, v, Bound::of(in.value() - rhs.c));
        delta.de.insert({i, v});
        if (i != kZ0)
          delta.dv.insert(i);
      }
    }
    // A uniform translation of one row/column preserves closure.
    return {r.closed(), delta};
  }
  case LinearRhs::Havoc:
  default: {
    DeltaSet delta;
    delta.dv.insert(v);
    return {z.closed().forgotten(v), delta};
  }
  }
}

ZoneState join(const ZoneState &a, const ZoneState &b) {
  if (a.dim() != b.dim())
    throw ContractError("join: dimension mismatch");
  if (a.is_bottom())
    return b.closed();
  if (b.is_bottom())
    return a.closed();
  ZoneState ca = a.closed();
  ZoneState cb = b.closed();
  ZoneState r = ca;
  for (size_t i = 0; i < r.m_.size(); ++i)
    r.m_[i] = Bound::max(ca.m_[i], cb.m_[i]);
  // Pointwise max of two closed matrices is closed.
  r.closed_ = true;
  return r;
}

ZoneState widen(const ZoneState &a, const ZoneState &b) {
  if (a.dim() != b.dim())
    throw ContractError("widen: dimension mismatch");
  if (a.is_bottom())
    return b;
  if (b.is_bottom())
    return a;
  ZoneState r = a;
  for (size_t i = 0; i < r.m_.size(); ++i)
    r.m_[i] = (b.m_[i] <= a.m_[i]) ? a.m_[i] : Bound::top();
  // Deliberately not re-closed: closing widened iterates defeats termination.
  r.closed_ = false;
  r.bottom_ = false;
  return r;
}

bool zone_equals(const ZoneState &a, const ZoneState &b) {
  if (a.dim() != b.dim())
    throw ContractError("zone_equals: dimension mismatch");
  ZoneState ca = a.closed();
  ZoneState cb = b.closed();
  if (ca.is_bottom() || cb.is_bottom())
    return ca.is_bottom() == cb.is_bottom();
  return ca.m_ == cb.m_;
}

bool box_contains(const ZoneState &z, const std::vector<std::int64_t> &point) {
  if (z.is_bottom())
    return false;
  auto value = [&](VarId v) { return v == kZ0 ? std::int64_t{0} : point[static_cast<size_t>(v - 1)]; };
  for (VarId s = 0; s < z.dim(); ++s)
    for (VarId t = 0; t < z.dim(); ++t) {
      if (s == t)
        continue;
      Bound b = z.at(s, t);
      if (b.is_finite() && value(s) - value(t) > b.value())
        return false;
    }
  return true;
}

std::vector<std::vector<std::int64_t>> enumerate_box(const ZoneState &z, std::int64_t box) {
  if (box < 0)
    throw ContractError("enumerate_box: negative box");
  int nvars = z.dim() - 1;
  double bits = nvars * std::log2(static_cast<double>(2 * box + 1));
  if (bits > 24.0)
    throw GuardError("enumerate_box: search space exceeds 24-bit guard");
  std::vector<std::vector<std::int64_t>> out;
  if (z.is_bottom())
    return out;
  if (nvars == 0) {
    out.push_back({});
    return out;
  }
  std::vector<std::int64_t> point(static_cast<size_t>(nvars), -box);
  while (true) {
    if (box_contains(z, point))
      out.push_back(point);
    int i = nvars - 1;
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

std::string ZoneState::dump() const {
  if (bottom_)
    return "false\n";
  std::ostringstream os;
  for (VarId s = 0; s < dim_; ++s)
    for (VarId t = 0; t < dim_; ++t) {
      if (s == t)
        continue;
      Bound b = at(s, t);
      if (b.is_finite())
        os << name(s) << " - " << name(t) << " <= " << b.value() << "\n";
    }
  return os.str();
}

} // namespace zonemin
