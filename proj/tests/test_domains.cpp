#include <doctest.h>

#include "testutil.hpp"
#include "zonemin/interval.hpp"
#include "zonemin/predicate.hpp"

using namespace zonemin;
using namespace zonemin::test;

namespace {

Stmt assign_stmt(VarId v, LinearRhs rhs) {
  Stmt s;
  s.kind = Stmt::SAssign;
  s.v = v;
  s.rhs = rhs;
  return s;
}

Stmt assume_stmt(Guard g) {
  Stmt s;
  s.kind = Stmt::SAssume;
  s.guard = g;
  return s;
}

Guard guard(VarId v, CmpOp op, VarId u, std::int64_t c) {
  Guard g;
  g.v = v;
  g.op = op;
  g.has_u = true;
  g.u = u;
  g.c = c;
  return g;
}

Guard guard_const(VarId v, CmpOp op, std::int64_t c) {
  Guard g;
  g.v = v;
  g.op = op;
  g.has_u = false;
  g.c = c;
  return g;
}

} // namespace

TEST_CASE("the seven elements partition the integers") {
  for (std::int64_t k = -100; k <= 100; ++k) {
    int hits = 0;
    for (int i = 0; i < 7; ++i) {
      const auto &e = kPredicateElements[static_cast<size_t>(i)];
      if (e.lo <= k && k <= e.hi)
        ++hits;
    }
    CHECK(hits == 1);
  }
  CHECK(element_of(-7) == 0);
  CHECK(element_of(-5) == 0);
  CHECK(element_of(-4) == 1);
  CHECK(element_of(-2) == 1);
  CHECK(element_of(-1) == 2);
  CHECK(element_of(0) == 3);
  CHECK(element_of(1) == 4);
  CHECK(element_of(2) == 5);
  CHECK(element_of(4) == 5);
  CHECK(element_of(5) == 6);
  CHECK(element_of(123) == 6);
}

TEST_CASE("interval guard refinement mirrors the narrative example") {
  // x = 1, w = 2, y = 3 in this universe
  auto names = names_for(3);
  IntervalState s = IntervalState::top(names);
  s.set_value(1, {0, 0});
  s.set_value(2, {kNegInf, 2});
  IntervalState r = interval_transfer(s, assume_stmt(guard(3, CmpOp::LE, 1, 0)));
  CHECK(r.value(3) == IntervalValue{kNegInf, 0});
  CHECK(r.value(1) == IntervalValue{0, 0});
  CHECK(r.value(2) == IntervalValue{kNegInf, 2});
}

TEST_CASE("interval transfer identities and havoc") {
  auto names = names_for(2);
  IntervalState s = IntervalState::top(names);
  s.set_value(1, {3, 5});
  IntervalState same = interval_transfer(s, assign_stmt(1, LinearRhs::self_plus(0)));
  CHECK(same == s);
  IntervalState shifted = interval_transfer(s, assign_stmt(1, LinearRhs::self_plus(2)));
  CHECK(shifted.value(1) == IntervalValue{5, 7});
  IntervalState hv = interval_transfer(s, assign_stmt(1, LinearRhs::havoc()));
  CHECK(hv.value(1).is_top());
  IntervalState cp = interval_transfer(s, assign_stmt(2, LinearRhs::var_plus(1, -1)));
  CHECK(cp.value(2) == IntervalValue{2, 4});
}

TEST_CASE("interval join and widen") {
  auto names = names_for(1);
  IntervalState a = IntervalState::top(names);
  a.set_value(1, {0, 1});
  IntervalState b = IntervalState::top(names);
  b.set_value(1, {0, 2});
  CHECK(interval_join_widen(a, a, false) == a);
  IntervalState w = interval_join_widen(a, b, true);
  CHECK(w.value(1) == IntervalValue{0, kPosInf});

  // chains stabilize within two widening steps per variable
  Rng rng(41);
  for (int i = 0; i < 30; ++i) {
    IntervalState cur = IntervalState::top(names);
    cur.set_value(1, {rng.irange(-5, 0), rng.irange(0, 5)});
    int steps = 0;
    while (true) {
      IntervalState nxt = IntervalState::top(names);
      nxt.set_value(1, {rng.irange(-5, 0), rng.irange(0, 5)});
      IntervalState widened = interval_join_widen(cur, interval_join_widen(cur, nxt, false), true);
      ++steps;
      if (widened == cur)
        break;
      cur = widened;
      REQUIRE(steps <= 3);
    }
  }
  IntervalState other = IntervalState::top(names_for(2));
  CHECK_THROWS_AS((void)interval_join_widen(a, other, false), ContractError);
}

TEST_CASE("predicate transfer abstracts constants by element") {
  auto names = names_for(2);
  PredicateState s = PredicateState::top(names);
  PredicateState z = predicate_transfer(s, assign_stmt(1, LinearRhs::constant(0)));
  CHECK(z.mask(1) == PredMask(1u << 3)); // {0}
  PredicateState big = predicate_transfer(s, assign_stmt(1, LinearRhs::constant(7)));
  CHECK(big.mask(1) == PredMask(1u << 6)); // [5, +inf)
  // x := x + 5 on {0}: lands entirely inside [5, +inf)
  PredicateState inc = predicate_transfer(z, assign_stmt(1, LinearRhs::self_plus(5)));
  CHECK(inc.mask(1) == PredMask(1u << 6));
  // disjointness is preserved: {0} u [5,inf) plus 5 stays {[5,inf)}, not a hull
  PredicateState both = z;
  both.set_mask(1, PredMask((1u << 3) | (1u << 6)));
  PredicateState shifted = predicate_transfer(both, assign_stmt(1, LinearRhs::self_plus(5)));
  CHECK(shifted.mask(1) == PredMask(1u << 6));
}

TEST_CASE("predicate guard filtering") {
  auto names = names_for(1);
  PredicateState s = PredicateState::top(names);
  PredicateState r = predicate_transfer(s, assume_stmt(guard_const(1, CmpOp::LE, 0)));
  CHECK(r.mask(1) == PredMask(0b0001111)); // E1..E4
  PredicateState eq = predicate_transfer(s, assume_stmt(guard_const(1, CmpOp::EQ, 3)));
  CHECK(eq.mask(1) == PredMask(1u << 5)); // [2,5)
  PredicateState ne = predicate_transfer(s, assume_stmt(guard_const(1, CmpOp::NE, 0)));
  CHECK(ne == s); // != refines nothing

  Rng rng(42);
  for (int i = 0; i < 60; ++i) {
    // random guard against concrete survivors
    PredicateState st = PredicateState::top(names_for(2));
    st.set_mask(1, PredMask(rng.irange(1, 127)));
    st.set_mask(2, PredMask(rng.irange(1, 127)));
    Guard g = rng.chance(0.5) ? guard(1, static_cast<CmpOp>(rng.irange(0, 5)), 2, rng.irange(-3, 3))
                              : guard_const(1, static_cast<CmpOp>(rng.irange(0, 5)), rng.irange(-6, 6));
    PredicateState out = predicate_transfer(st, assume_stmt(g));
    for (std::int64_t a = -8; a <= 8; ++a)
      for (std::int64_t b = -8; b <= 8; ++b) {
        if (!mask_contains(st.mask(1), a) || !mask_contains(st.mask(2), b))
          continue;
        Env env{a, b};
        if (!eval_guard(env, g))
          continue;
        REQUIRE(!out.is_bottom());
        CHECK(mask_contains(out.mask(1), a));
        CHECK(mask_contains(out.mask(2), b));
      }
  }
}

TEST_CASE("predicate concretization") {
  auto names = names_for(2);
  PredicateState s = PredicateState::top(names);
  s.set_mask(1, PredMask(1u << 3));
  auto pts = predicate_gamma(s, {1}, 8);
  CHECK(pts == std::vector<std::vector<std::int64_t>>{{0}});
  PredicateState top = PredicateState::top(names);
  CHECK(predicate_gamma(top, {1}, 5).size() == 11);
  Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    PredicateState st = PredicateState::top(names);
    st.set_mask(1, PredMask(rng.irange(1, 127)));
    for (auto &v : predicate_gamma(st, {1}, 8))
      CHECK(mask_contains(st.mask(1), v[0]));
  }
}

TEST_CASE("interval and predicate dump formats") {
  auto names = names_for(2);
  IntervalState iv = IntervalState::top(names);
  iv.set_value(1, {0, 3});
  iv.set_value(2, {kNegInf, 7});
  CHECK(iv.dump() == "a in [0, 3]\nb in [-inf, 7]\n");
  CHECK(IntervalState::bottom(names).dump() == "false\n");

  PredicateState pd = PredicateState::top(names);
  pd.set_mask(1, PredMask((1u << 0) | (1u << 2)));
  CHECK(pd.dump() == "a in {E1,E3}\nb in {E1,E2,E3,E4,E5,E6,E7}\n");
  CHECK(PredicateState::bottom(names).dump() == "false\n");
}

TEST_CASE("transfers are monotone on ordered inputs") {
  Rng rng(44);
  auto names = names_for(2);
  for (int i = 0; i < 60; ++i) {
    // intervals
    IntervalState lo = IntervalState::top(names);
    std::int64_t a = rng.irange(-4, 0), b = rng.irange(0, 4);
    lo.set_value(1, {a, b});
    lo.set_value(2, {rng.irange(-4, 0), rng.irange(0, 4)});
    IntervalState hi = IntervalState::top(names);
    hi.set_value(1, {a - rng.irange(0, 3), b + rng.irange(0, 3)});
    hi.set_value(2, {kNegInf, kPosInf});
    Stmt st = rng.chance(0.5)
                  ? assign_stmt(1, LinearRhs::var_plus(2, rng.irange(-2, 2)))
                  : assume_stmt(guard(1, static_cast<CmpOp>(rng.irange(0, 5)), 2, rng.irange(-2, 2)));
    CHECK(interval_leq(interval_transfer(lo, st), interval_transfer(hi, st)));

    // predicates
    PredicateState plo = PredicateState::top(names);
    PredMask m1 = PredMask(rng.irange(1, 127));
    PredMask m2 = PredMask(rng.irange(1, 127));
    plo.set_mask(1, m1);
    plo.set_mask(2, m2);
    PredicateState phi = PredicateState::top(names);
    phi.set_mask(1, PredMask(m1 | rng.irange(0, 127)));
    phi.set_mask(2, PredMask(m2 | rng.irange(0, 127)));
    CHECK(predicate_leq(predicate_transfer(plo, st), predicate_transfer(phi, st)));
  }
}
