#include <doctest.h>

#include <sstream>

#include "testutil.hpp"
#include "zonemin/engine.hpp"
#include "zonemin/parser.hpp"

using namespace zonemin;
using namespace zonemin::test;

namespace {

const char *kFig1 = R"(int w;
int y;
int x;
x := 0;
if (w <= x + 2) {
  if (y <= x) {
    assert y <= 0;
  }
}
)";

AnalysisResult zones_of(const std::string &src) {
  return run_fixpoint(build_cfg(parse_program(src, "t")), DomainKind::Zones);
}

PointKey assert_in_point(const Cfg &cfg) {
  for (int b = 0; b < static_cast<int>(cfg.blocks.size()); ++b) {
    const auto &stmts = cfg.blocks[static_cast<size_t>(b)].stmts;
    for (int i = 0; i < static_cast<int>(stmts.size()); ++i)
      if (stmts[static_cast<size_t>(i)].kind == Stmt::SAssert)
        return in_point_of(cfg, b, i);
  }
  return {-1, -1};
}

} // namespace

TEST_CASE("fig end to end: state, reduction, and slices at the assert") {
  Cfg cfg = build_cfg(parse_program(kFig1, "fig1"));
  AnalysisResult res = run_fixpoint(cfg, DomainKind::Zones);
  PointKey key = assert_in_point(cfg);
  REQUIRE(key.block >= 0);
  const ZonePointRecord &zr = res.zone_at.at(key);

  VarId w = 1, y = 2, x = 3;
  CHECK(zr.state.at(x, kZ0) == Bound::of(0));
  CHECK(zr.state.at(kZ0, x) == Bound::of(0));
  CHECK(zr.state.at(w, x) == Bound::of(2));
  CHECK(zr.state.at(y, x) == Bound::of(0));
  CHECK(zr.state.at(w, kZ0) == Bound::of(2));
  CHECK(zr.state.at(y, kZ0) == Bound::of(0));

  CHECK(zr.delta.de == std::set<std::pair<VarId, VarId>>{{y, x}});
  CHECK(zr.delta.dv == std::set<VarId>{y, x});

  Subgraph want;
  want.vars = {y};
  want.edges = {{y, kZ0, 0}};
  CHECK(zr.slices.mn == want);
  CHECK(zr.slices.nn == want);
  CHECK(zr.slices.cc == want);
  CHECK(zr.slices.fs.vars == std::set<VarId>{w, y, x});
  CHECK(zr.slices.fs.edges.size() == 4);
}

TEST_CASE("loop with delayed widening reaches the expected invariants") {
  const char *src = R"(int a;
a := 0;
while (a <= 9) {
  a := a + 1;
}
)";
  Cfg cfg = build_cfg(parse_program(src, "loop"));
  AnalysisResult iv = run_fixpoint(cfg, DomainKind::Intervals);
  AnalysisResult zn = run_fixpoint(cfg, DomainKind::Zones);
  REQUIRE(cfg.widen_points.size() == 1);
  int head = *cfg.widen_points.begin();

  const IntervalState &at_head = iv.interval_at.at({head, 0});
  CHECK(at_head.value(1) == IntervalValue{0, kPosInf});
  // exit point: the else-assume edge out of the header
  int n = static_cast<int>(cfg.blocks[static_cast<size_t>(head)].stmts.size());
  int exit_idx = -1;
  const auto &succs = cfg.blocks[static_cast<size_t>(head)].succs;
  for (int e = 0; e < static_cast<int>(succs.size()); ++e)
    if (succs[static_cast<size_t>(e)].label == CfgEdge::Else)
      exit_idx = n + 1 + e;
  REQUIRE(exit_idx > 0);
  CHECK(iv.interval_at.at({head, exit_idx}).value(1) == IntervalValue{10, kPosInf});

  const ZoneState &zhead = zn.zone_at.at({head, 0}).state;
  CHECK(zhead.at(kZ0, 1) == Bound::of(0));    // a >= 0 survives widening
  CHECK(zhead.at(1, kZ0).is_top());           // upper bound widened away
  const ZoneState &zexit = zn.zone_at.at({head, exit_idx}).state;
  CHECK(zexit.at(kZ0, 1) == Bound::of(-10)); // a >= 10
}

TEST_CASE("fixpoint property: recorded states absorb their contributions") {
  Rng rng(61);
  for (int i = 0; i < 25; ++i) {
    std::string src = random_program(rng, 3, static_cast<int>(rng.irange(2, 7)));
    Cfg cfg = build_cfg(parse_program(src, "r"));
    AnalysisResult zn = run_fixpoint(cfg, DomainKind::Zones);
    AnalysisResult iv = run_fixpoint(cfg, DomainKind::Intervals);
    AnalysisResult pd = run_fixpoint(cfg, DomainKind::Predicates);
    for (int b = 0; b < static_cast<int>(cfg.blocks.size()); ++b) {
      ZoneState zcur = zn.zone_in.at(b);
      IntervalState icur = iv.interval_in.at(b);
      PredicateState pcur = pd.predicate_in.at(b);
      for (const Stmt &st : cfg.blocks[static_cast<size_t>(b)].stmts) {
        zcur = transfer_with_delta(zcur, st).out;
        icur = interval_transfer(icur, st);
        pcur = predicate_transfer(pcur, st);
      }
      for (const CfgEdge &e : cfg.blocks[static_cast<size_t>(b)].succs) {
        ZoneState zc = e.assume ? transfer_with_delta(zcur, *e.assume).out : zcur;
        IntervalState ic = e.assume ? interval_transfer(icur, *e.assume) : icur;
        PredicateState pc = e.assume ? predicate_transfer(pcur, *e.assume) : pcur;
        CHECK(zone_equals(join(zn.zone_in.at(e.to), zc), zn.zone_in.at(e.to)));
        CHECK(interval_join_widen(iv.interval_in.at(e.to), ic, false) == iv.interval_in.at(e.to));
        CHECK(predicate_join(pd.predicate_in.at(e.to), pc) == pd.predicate_in.at(e.to));
      }
    }
  }
}

TEST_CASE("transfer deltas: guard meets report exactly the written edge") {
  ZoneState pre = ZoneState::top(names_for(3));
  VarId w = 1, y = 2, x = 3;
  pre.set(x, kZ0, Bound::of(0));
  pre.set(kZ0, x, Bound::of(0));
  pre.set(w, x, Bound::of(2));
  Stmt st;
  st.kind = Stmt::SAssume;
  st.guard = {y, CmpOp::LE, true, x, 0};
  TransferOut tr = transfer_with_delta(pre.closed(), st);
  CHECK(tr.delta.de == std::set<std::pair<VarId, VarId>>{{y, x}});
  CHECK(tr.delta.dv == std::set<VarId>{y, x});

  Stmt nop;
  nop.kind = Stmt::SNop;
  TransferOut tn = transfer_with_delta(pre.closed(), nop);
  CHECK(tn.delta.empty());
  CHECK(zone_equals(tn.out, pre));
}

TEST_CASE("replaying the written set onto the baseline reconstructs the step") {
  Rng rng(62);
  int steps_checked = 0;
  for (int i = 0; i < 20; ++i) {
    std::string src = random_program(rng, 3, static_cast<int>(rng.irange(2, 6)));
    AnalysisResult res = zones_of(src);
    for (const StepRecord &rec : res.steps) {
      if (rec.kind != StepRecord::Transfer || rec.after.is_bottom())
        continue; // infeasible outcomes clear their deltas
      ZoneState replay = rec.before;
      for (auto &[s, t, b] : rec.written)
        replay.set(s, t, b);
      CHECK(zone_equals(replay, rec.after));
      // written endpoints are tracked variables
      for (auto &[s, t] : rec.delta.de) {
        if (s != kZ0)
          CHECK(rec.delta.dv.count(s));
        if (t != kZ0)
          CHECK(rec.delta.dv.count(t));
      }
      ++steps_checked;
    }
  }
  CHECK(steps_checked > 100);
}

TEST_CASE("entries of the reduced state outside the CC slice never change") {
  Rng rng(63);
  int checked = 0;
  for (int i = 0; i < 25; ++i) {
    std::string src = random_program(rng, 3, static_cast<int>(rng.irange(2, 6)));
    AnalysisResult res = zones_of(src);
    for (const StepRecord &rec : res.steps) {
      if (rec.kind != StepRecord::Transfer || rec.after.is_bottom() || rec.before.is_bottom())
        continue;
      auto ids = rec.slices.cc.edge_ids();
      std::set<std::pair<VarId, VarId>> spur = spurious_edge_ids(rec.after);
      for (VarId s = 0; s < rec.after.dim(); ++s)
        for (VarId t = 0; t < rec.after.dim(); ++t) {
          if (s == t || !rec.after.at(s, t).is_finite())
            continue;
          if (spur.count({s, t}) || ids.count({s, t}))
            continue;
          CHECK(rec.after.at(s, t) == rec.before.at(s, t));
          ++checked;
        }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("widen steps only ever grow the state") {
  const char *src = R"(int a;
int b;
a := 0;
b := 0;
while (a <= 20) {
  a := a + 3;
  b := b + 1;
}
)";
  AnalysisResult res = zones_of(src);
  bool saw_widen = false;
  for (const StepRecord &rec : res.steps) {
    if (rec.kind != StepRecord::Widen)
      continue;
    saw_widen = true;
    for (VarId s = 0; s < rec.after.dim(); ++s)
      for (VarId t = 0; t < rec.after.dim(); ++t)
        CHECK(rec.before.at(s, t) <= rec.after.at(s, t));
  }
  CHECK(saw_widen);
}

TEST_CASE("deterministic analysis output") {
  Rng rng(64);
  std::string src = random_program(rng, 3, 6);
  Cfg cfg1 = build_cfg(parse_program(src, "a"));
  Cfg cfg2 = build_cfg(parse_program(src, "a"));
  AnalysisResult r1 = run_fixpoint(cfg1, DomainKind::Zones);
  AnalysisResult r2 = run_fixpoint(cfg2, DomainKind::Zones);
  std::ostringstream d1, d2;
  for (const PointInfo &pi : r1.points) {
    d1 << pi.label << "\n" << r1.zone_at.at(pi.key).state.dump();
    d1 << r1.zone_at.at(pi.key).slices.mn.serialize(cfg1.names);
  }
  for (const PointInfo &pi : r2.points) {
    d2 << pi.label << "\n" << r2.zone_at.at(pi.key).state.dump();
    d2 << r2.zone_at.at(pi.key).slices.mn.serialize(cfg2.names);
  }
  CHECK(d1.str() == d2.str());
}

TEST_CASE("trace stream format") {
  std::ostringstream trace;
  run_fixpoint(build_cfg(parse_program(kFig1, "fig1")), DomainKind::Zones, &trace);
  std::istringstream lines(trace.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("visit block=", 0) == 0);
    CHECK(line.find(" domain=zones changed=") != std::string::npos);
    ++count;
  }
  CHECK(count >= 4);
}

TEST_CASE("concrete executions stay inside every abstract state") {
  Rng rng(65);
  for (int i = 0; i < 15; ++i) {
    std::string src = random_program(rng, 3, static_cast<int>(rng.irange(2, 6)));
    Cfg cfg = build_cfg(parse_program(src, "r"));
    AnalysisResult zn = run_fixpoint(cfg, DomainKind::Zones);
    AnalysisResult iv = run_fixpoint(cfg, DomainKind::Intervals);
    AnalysisResult pd = run_fixpoint(cfg, DomainKind::Predicates);
    std::map<PointKey, std::vector<Env>> seen;
    for (int run = 0; run < 30; ++run) {
      Env env;
      for (int v = 0; v < cfg.num_vars(); ++v)
        env.push_back(rng.irange(-8, 8));
      concrete_run(cfg, env, rng, seen);
    }
    for (auto &[key, envs] : seen) {
      if (!zn.zone_at.count(key))
        continue;
      const ZoneState &z = zn.zone_at.at(key).state;
      const IntervalState &is = iv.interval_at.at(key);
      const PredicateState &ps = pd.predicate_at.at(key);
      for (const Env &env : envs) {
        CHECK(box_contains(z, env));
        REQUIRE(!is.is_bottom());
        REQUIRE(!ps.is_bottom());
        for (VarId v = 1; v <= cfg.num_vars(); ++v) {
          CHECK(is.value(v).contains(env[static_cast<size_t>(v - 1)]));
          CHECK(mask_contains(ps.mask(v), env[static_cast<size_t>(v - 1)]));
        }
      }
    }
  }
}

TEST_CASE("engine transfers agree with the zone-level assignment op") {
  Rng rng(66);
  for (int i = 0; i < 40; ++i) {
    ZoneState z = random_closed_nonbottom(rng, 3);
    VarId v = static_cast<VarId>(rng.irange(1, 3));
    LinearRhs rhs = rng.chance(0.5) ? LinearRhs::constant(rng.irange(-5, 5))
                                    : LinearRhs::var_plus(v == 1 ? 2 : 1, rng.irange(-3, 3));
    Stmt st;
    st.kind = Stmt::SAssign;
    st.v = v;
    st.rhs = rhs;
    auto [zop, d1] = assign(z, v, rhs);
    TransferOut tr = transfer_with_delta(z, st);
    CHECK(zone_equals(zop, tr.out));
    CHECK(d1.de == tr.delta.de);
  }
}
