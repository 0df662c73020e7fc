#include <doctest.h>

#include "testutil.hpp"
#include "zonemin/interval.hpp"
#include "zonemin/zone.hpp"

using namespace zonemin;
using namespace zonemin::test;

namespace {

// Fixture over {Z0, w, y, x}: w=1, y=2, x=3.
constexpr VarId W = 1, Y = 2, X = 3;

ZoneState fig_open() { // x = 0, w - x <= 2, y - x <= 0; not closed
  ZoneState z = ZoneState::top(names_for(3));
  z.set(X, kZ0, Bound::of(0));
  z.set(kZ0, X, Bound::of(0));
  z.set(W, X, Bound::of(2));
  z.set(Y, X, Bound::of(0));
  return z;
}

ZoneState fig_closed() { return fig_open().closed(); }

} // namespace

TEST_CASE("bound saturating arithmetic and order") {
  Bound t = Bound::top();
  Bound b3 = Bound::of(3);
  CHECK((t + b3).is_top());
  CHECK((b3 + t).is_top());
  CHECK((t + t).is_top());
  CHECK((Bound::of(2) + Bound::of(-5)) == Bound::of(-3));
  CHECK(Bound::min(t, b3) == b3);
  CHECK(Bound::min(b3, Bound::of(1)) == Bound::of(1));
  CHECK(b3 <= t);
  CHECK(t <= t);
  CHECK(!(t <= b3));
  CHECK(Bound::of(-9) < Bound::of(0));
}

TEST_CASE("closure adds exactly the inferred fig edges") {
  ZoneState c = fig_closed();
  // x <-> Z0 at 0, w -> x at 2, y -> x at 0, plus inferred w -> Z0 and y -> Z0
  CHECK(c.at(X, kZ0) == Bound::of(0));
  CHECK(c.at(kZ0, X) == Bound::of(0));
  CHECK(c.at(W, X) == Bound::of(2));
  CHECK(c.at(Y, X) == Bound::of(0));
  CHECK(c.at(W, kZ0) == Bound::of(2));
  CHECK(c.at(Y, kZ0) == Bound::of(0));
  int finite = 0;
  for (VarId s = 0; s < c.dim(); ++s)
    for (VarId t = 0; t < c.dim(); ++t)
      if (s != t && c.at(s, t).is_finite())
        ++finite;
  CHECK(finite == 6);
}

TEST_CASE("closure leaves an unconstrained state unchanged") {
  ZoneState z = ZoneState::top(names_for(3));
  CHECK(z.closed() == z);
}

TEST_CASE("closure is idempotent and preserves the concretization") {
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    ZoneState z = random_zone(rng, static_cast<int>(rng.irange(2, 4)), 0.5, -5, 5);
    ZoneState c = z.closed();
    CHECK(c.closed() == c);
    if (!c.is_bottom())
      CHECK(boxes_equal(z, c, 7));
  }
}

TEST_CASE("closure agrees with the shortest-path oracle") {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    ZoneState z = random_zone(rng, 4, 0.5);
    SpOracle o = shortest_path_oracle(z);
    ZoneState c = z.closed();
    CHECK(c.is_bottom() == o.negative_cycle);
    if (!c.is_bottom())
      for (VarId s = 0; s < z.dim(); ++s)
        for (VarId t = 0; t < z.dim(); ++t) {
          if (s == t)
            continue;
          CHECK(c.at(s, t) == o.dist[static_cast<size_t>(s)][static_cast<size_t>(t)]);
        }
  }
}

TEST_CASE("bottom detection") {
  ZoneState z = ZoneState::top(names_for(1));
  z.set(1, kZ0, Bound::of(-1)); // a <= -1
  z.set(kZ0, 1, Bound::of(0));  // a >= 0
  CHECK(z.closed().is_bottom());
  CHECK(!fig_closed().is_bottom());
  Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    // random interval boxes are satisfiable when lo <= hi
    ZoneState b = ZoneState::top(names_for(2));
    for (VarId v = 1; v <= 2; ++v) {
      std::int64_t lo = rng.irange(-5, 2);
      b.set(v, kZ0, Bound::of(lo + rng.irange(0, 5)));
      b.set(kZ0, v, Bound::of(-lo));
    }
    CHECK(!b.closed().is_bottom());
  }
}

TEST_CASE("meet_edge tightens, reports the delta, and absorbs weaker bounds") {
  ZoneState pre = ZoneState::top(names_for(3));
  pre.set(X, kZ0, Bound::of(0));
  pre.set(kZ0, X, Bound::of(0));
  pre.set(W, X, Bound::of(2));
  auto [z1, d1] = pre.met(Y, X, Bound::of(0));
  CHECK(d1.de == std::set<std::pair<VarId, VarId>>{{Y, X}});
  CHECK(d1.dv == std::set<VarId>{Y, X});
  CHECK(z1.at(Y, X) == Bound::of(0));

  auto [z2, d2] = z1.met(Y, X, Bound::of(5)); // weaker: absorbed
  CHECK(d2.de.empty());
  CHECK(zone_equals(z1, z2));

  CHECK_THROWS_AS((void)pre.met(X, X, Bound::of(1)), ContractError);

  Rng rng(14);
  for (int i = 0; i < 40; ++i) {
    ZoneState z = random_closed_nonbottom(rng, 3);
    VarId s = static_cast<VarId>(rng.irange(0, 3));
    VarId t = static_cast<VarId>(rng.irange(0, 3));
    if (s == t)
      continue;
    auto [zt, d] = z.met(s, t, Bound::of(rng.irange(-6, 6)));
    auto before = enumerate_box(z, 9);
    auto after = enumerate_box(zt, 9);
    CHECK(std::includes(before.begin(), before.end(), after.begin(), after.end()));
  }
}

TEST_CASE("forget drops one variable and keeps inferred facts about the rest") {
  ZoneState c = fig_closed();
  ZoneState f = c.forgotten(Y);
  CHECK(f.at(W, kZ0) == Bound::of(2));
  CHECK(f.at(Y, X).is_top());
  CHECK(f.at(Y, kZ0).is_top());

  // projection semantics against the enumeration oracle
  std::int64_t B = 4;
  auto full = enumerate_box(c, B);
  auto dropped = enumerate_box(f, B);
  std::set<std::pair<std::int64_t, std::int64_t>> proj; // (w, x) pairs
  for (auto &v : full)
    proj.insert({v[0], v[2]});
  std::set<std::vector<std::int64_t>> expect;
  for (auto &[w, x] : proj)
    for (std::int64_t y = -B; y <= B; ++y)
      expect.insert({w, y, x});
  CHECK(std::set<std::vector<std::int64_t>>(dropped.begin(), dropped.end()) == expect);

  CHECK(f.forgotten(Y) == f); // already unconstrained
  ZoneState all = c.forgotten(W).forgotten(Y).forgotten(X);
  CHECK(zone_equals(all, ZoneState::top(names_for(3))));
  CHECK_THROWS_AS((void)c.forgotten(kZ0), ContractError);
}

TEST_CASE("assign constant, identity, and substitution semantics") {
  ZoneState top = ZoneState::top(names_for(3));
  auto [z, d] = assign(top, X, LinearRhs::constant(0));
  CHECK(z.at(X, kZ0) == Bound::of(0));
  CHECK(z.at(kZ0, X) == Bound::of(0));
  CHECK(d.de == std::set<std::pair<VarId, VarId>>{{X, kZ0}, {kZ0, X}});

  ZoneState c = fig_closed();
  auto [same, d0] = assign(c, Y, LinearRhs::self_plus(0));
  CHECK(d0.de.empty());
  CHECK(zone_equals(same, c));

  // v := u + c against concrete substitution over the box oracle
  Rng rng(15);
  for (int i = 0; i < 25; ++i) {
    ZoneState s = random_closed_nonbottom(rng, 3, 0.35);
    VarId v = static_cast<VarId>(rng.irange(1, 3));
    VarId u = static_cast<VarId>(rng.irange(1, 3));
    if (u == v)
      continue;
    std::int64_t cst = rng.irange(-3, 3);
    auto [res, dd] = assign(s, v, LinearRhs::var_plus(u, cst));
    std::int64_t B = 10, Bwide = 14;
    auto got = enumerate_box(res, B);
    // forward: every image of a solution is a solution
    for (auto vec : enumerate_box(s, B)) {
      vec[static_cast<size_t>(v - 1)] = vec[static_cast<size_t>(u - 1)] + cst;
      bool in_range = true;
      for (auto x : vec)
        in_range = in_range && -B <= x && x <= B;
      if (in_range)
        CHECK(std::binary_search(got.begin(), got.end(), vec));
    }
    // backward: every result point has a concrete preimage
    for (auto vec : got) {
      CHECK(vec[static_cast<size_t>(v - 1)] == vec[static_cast<size_t>(u - 1)] + cst);
      bool found = false;
      for (std::int64_t v0 = -Bwide; v0 <= Bwide && !found; ++v0) {
        auto pre = vec;
        pre[static_cast<size_t>(v - 1)] = v0;
        found = box_contains(s, pre);
      }
      CHECK(found);
    }
  }
}

TEST_CASE("join is a commutative, idempotent upper bound") {
  ZoneState c = fig_closed();
  CHECK(zone_equals(join(c, c), c));
  CHECK(zone_equals(join(c, ZoneState::bottom(names_for(3))), c));
  Rng rng(16);
  for (int i = 0; i < 30; ++i) {
    ZoneState a = random_closed_nonbottom(rng, 3);
    ZoneState b = random_closed_nonbottom(rng, 3);
    ZoneState j = join(a, b);
    CHECK(zone_equals(j, join(b, a)));
    auto ja = enumerate_box(j, 9);
    for (auto &v : enumerate_box(a, 9))
      CHECK(std::binary_search(ja.begin(), ja.end(), v));
    for (auto &v : enumerate_box(b, 9))
      CHECK(std::binary_search(ja.begin(), ja.end(), v));
  }
  ZoneState d2 = ZoneState::top(names_for(1));
  CHECK_THROWS_AS((void)join(fig_closed(), d2), ContractError);
}

TEST_CASE("widening drops growing bounds and stabilizes") {
  ZoneState a = ZoneState::top(names_for(1));
  a.set(1, kZ0, Bound::of(1)); // x <= 1
  ZoneState b = ZoneState::top(names_for(1));
  b.set(1, kZ0, Bound::of(2)); // x <= 2
  ZoneState w = widen(a.closed(), b.closed());
  CHECK(w.at(1, kZ0).is_top());
  CHECK(zone_equals(widen(a.closed(), a.closed()), a));

  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    ZoneState cur = random_closed_nonbottom(rng, 3);
    int steps = 0;
    while (true) {
      ZoneState next = random_closed_nonbottom(rng, 3);
      ZoneState widened = widen(cur, join(cur.closed(), next));
      ++steps;
      if (zone_equals(widened, cur))
        break;
      cur = widened;
      REQUIRE(steps <= 16); // each of dim^2 entries blows up at most once
    }
  }
}

TEST_CASE("zone equality is closure equality") {
  CHECK(zone_equals(fig_open(), fig_closed()));
  ZoneState c = fig_closed();
  CHECK(!zone_equals(c, c.forgotten(Y)));
  Rng rng(18);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    ZoneState a = random_zone(rng, 3, 0.45);
    ZoneState b = a;
    if (rng.chance(0.5)) {
      b = a.closed(); // semantics-preserving rewrite
    } else {
      VarId s = static_cast<VarId>(rng.irange(0, 3));
      VarId t = static_cast<VarId>(rng.irange(0, 3));
      if (s == t)
        continue;
      b.set(s, t, Bound::of(rng.irange(-8, 8)));
    }
    if (a.closed().is_bottom() || b.closed().is_bottom()) {
      CHECK(zone_equals(a, b) == (a.closed().is_bottom() && b.closed().is_bottom()));
      continue;
    }
    CHECK(zone_equals(a, b) == boxes_equal(a, b, 10));
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("interval projection of a closed zone") {
  IntervalState iv = to_intervals(fig_closed());
  CHECK(iv.value(X) == IntervalValue{0, 0});
  CHECK(iv.value(W) == IntervalValue{kNegInf, 2});
  CHECK(iv.value(Y) == IntervalValue{kNegInf, 0});
  IntervalState top = to_intervals(ZoneState::top(names_for(2)));
  CHECK(top.value(1).is_top());
  CHECK(top.value(2).is_top());
  Rng rng(19);
  for (int i = 0; i < 25; ++i) {
    ZoneState z = random_closed_nonbottom(rng, 3);
    IntervalState box = to_intervals(z);
    for (auto &vec : enumerate_box(z, 9))
      for (VarId v = 1; v <= 3; ++v)
        CHECK(box.value(v).contains(vec[static_cast<size_t>(v - 1)]));
  }
}

TEST_CASE("enumerate_box counts and guard") {
  auto sols = enumerate_box(fig_closed(), 3);
  CHECK(sols.size() == 24); // x pinned, six w values, four y values
  CHECK(enumerate_box(ZoneState::bottom(names_for(2)), 3).empty());
  CHECK(enumerate_box(ZoneState::top(names_for(2)), 1).size() == 9);
  CHECK_THROWS_AS((void)enumerate_box(ZoneState::top(names_for(6)), 16), GuardError);
}

TEST_CASE("debug dump: one line per inequality, row-major, Z0 spelled out") {
  std::vector<std::string> figvars = {"w", "y", "x"};
  ZoneState z = ZoneState::top(ZoneState::make_names(figvars));
  z.set(3, kZ0, Bound::of(0));
  z.set(kZ0, 3, Bound::of(0));
  z.set(1, 3, Bound::of(2));
  z.set(2, 3, Bound::of(0));
  CHECK(z.dump() == "Z0 - x <= 0\n"
                    "w - x <= 2\n"
                    "y - x <= 0\n"
                    "x - Z0 <= 0\n");
  CHECK(ZoneState::bottom(names_for(2)).dump() == "false\n");
  CHECK(ZoneState::top(names_for(2)).dump().empty());
}

TEST_CASE("canonical equality matches set equality on random instances") {
  Rng rng(20);
  for (int i = 0; i < 40; ++i) {
    ZoneState a = random_closed_nonbottom(rng, static_cast<int>(rng.irange(2, 4)), 0.4);
    ZoneState b = random_closed_nonbottom(rng, a.dim() - 1, 0.4);
    CHECK(zone_equals(a, b) == boxes_equal(a, b, 9));
  }
}
