#include "zonemin/engine.hpp"

#include <algorithm>
#include <set>

namespace zonemin {

const char *to_string(DomainKind d) {
  switch (d) {
  case DomainKind::Zones: return "zones";
  case DomainKind::Intervals: return "intervals";
  case DomainKind::Predicates: return "predicates";
  }
  return "?";
}

namespace {

// Difference edges for a guard, normalized to weak comparisons over the
// integers. NE never refines zones. `infeasible` flags v op v + c guards
// with no solutions.
struct GuardEdges {
  bool infeasible = false;
  std::vector<std::tuple<VarId, VarId, Bound>> edges;
};

GuardEdges zone_guard_edges(const Guard &g) {
  GuardEdges out;
  Guard n = g;
  if (n.op == CmpOp::LT) {
    n.op = CmpOp::LE;
    n.c -= 1;
  } else if (n.op == CmpOp::GT) {
    n.op = CmpOp::GE;
    n.c += 1;
  }
  if (n.op == CmpOp::NE)
    return out; // not zone-expressible
  if (n.has_u && n.u == n.v) {
    bool sat = true;
    if (n.op == CmpOp::LE)
      sat = 0 <= n.c;
    else if (n.op == CmpOp::GE)
      sat = 0 >= n.c;
    else if (n.op == CmpOp::EQ)
      sat = n.c == 0;
    out.infeasible = !sat;
    return out;
  }
  VarId u = n.has_u ? n.u : kZ0;
  if (n.op == CmpOp::LE || n.op == CmpOp::EQ)
    out.edges.push_back({n.v, u, Bound::of(n.c)});
  if (n.op == CmpOp::GE || n.op == CmpOp::EQ)
    out.edges.push_back({u, n.v, Bound::of(-n.c)});
  return out;
}

TransferOut meet_all(const ZoneState &base,
                     const std::vector<std::tuple<VarId, VarId, Bound>> &edges,
                     std::set<VarId> extra_dv) {
  TransferOut r;
  r.baseline = base;
  ZoneState cur = base;
  DeltaSet delta;
  for (auto &[s, t, b] : edges) {
    auto [next, d] = cur.met(s, t, b);
    cur = std::move(next);
    for (VarId v : d.dv)
      delta.dv.insert(v);
    for (auto &e : d.de) {
      delta.de.insert(e);
      r.written.push_back({e.first, e.second, b});
    }
    if (cur.is_bottom())
      break;
  }
  if (!delta.de.empty())
    for (VarId v : extra_dv)
      delta.dv.insert(v);
  r.out = cur.is_bottom() ? cur : cur.closed();
  if (cur.is_bottom()) {
    r.delta = DeltaSet{};
    r.written.clear();
  } else {
    r.delta = delta;
  }
  return r;
}

} // namespace

TransferOut transfer_with_delta(const ZoneState &z, const Stmt &stmt) {
  ZoneState in = z.closed();
  TransferOut r;
  r.baseline = in;
  r.out = in;
  if (in.is_bottom())
    return r;
  switch (stmt.kind) {
  case Stmt::SAssume: {
    GuardEdges ge = zone_guard_edges(stmt.guard);
    if (ge.infeasible) {
      r.out = ZoneState::bottom(in.names());
      return r;
    }
    TransferOut out = meet_all(in, ge.edges, {});
    out.updated = updated_vars(out.delta.de);
    return out;
  }
  case Stmt::SAssign: {
    VarId v = stmt.v;
    switch (stmt.rhs.kind) {
    case LinearRhs::Const: {
      ZoneState base = in.forgotten(v);
      TransferOut out = meet_all(
          base, {{v, kZ0, Bound::of(stmt.rhs.c)}, {kZ0, v, Bound::of(-stmt.rhs.c)}}, {v});
      out.delta.dv.insert(v);
      out.updated = {v};
      return out;
    }
    case LinearRhs::VarPlus: {
      VarId u = stmt.rhs.u;
      ZoneState base = in.forgotten(v);
      TransferOut out =
          meet_all(base, {{v, u, Bound::of(stmt.rhs.c)}, {u, v, Bound::of(-stmt.rhs.c)}}, {v});
      out.delta.dv.insert(v);
      out.updated = {v};
      return out;
    }
    case LinearRhs::SelfPlus: {
      if (stmt.rhs.c == 0)
        return r; // identity update
      auto [out, delta] = assign(in, v, stmt.rhs);
      r.out = out;
      r.delta = delta;
      r.updated = {v};
      for (auto &[s, t] : delta.de)
        r.written.push_back({s, t, out.at(s, t)});
      return r;
    }
    case LinearRhs::Havoc: {
      r.out = in.forgotten(v);
      r.baseline = r.out; // nothing is met on top of the havoc
      r.delta.dv.insert(v);
      r.updated = {v};
      return r;
    }
    }
    return r;
  }
  case Stmt::SAssert:
  case Stmt::SNop:
    return r;
  }
  return r;
}

std::set<VarId> slicing_vars(const DeltaSet &delta, bool merge_style) {
  if (merge_style)
    return delta.dv;
  if (delta.de.empty())
    return delta.dv; // havoc: the forgotten variable itself
  return updated_vars(delta.de);
}

Slices compute_slices(const ZoneState &closed_state, const DeltaSet &delta, bool merge_style,
                      const ZoneState *before, const std::set<VarId> *updated) {
  Slices s;
  if (closed_state.is_bottom())
    return s; // all empty
  s.fs = min_changed_set(closed_state, {}, {}, MinMethod::FS);

  std::set<VarId> cv = updated && !merge_style ? *updated : slicing_vars(delta, merge_style);
  std::set<VarId> mn_vars = merge_style ? updated_vars(delta.de) : cv;
  bool mn_has_change = !delta.de.empty();
  if (!merge_style && before && !before->is_bottom()) {
    // closure-propagated interval changes join both variable sets
    for (VarId v = 1; v < closed_state.dim(); ++v) {
      if (closed_state.at(v, kZ0) != before->at(v, kZ0) ||
          closed_state.at(kZ0, v) != before->at(kZ0, v)) {
        cv.insert(v);
        mn_vars.insert(v);
        mn_has_change = true;
      }
    }
  }
  if (cv.empty()) {
    // No minimization requested for this point; the full state stands in.
    s.cc = s.fs;
    s.nn = s.fs;
    s.mn = s.fs;
    return s;
  }
  ZoneState g = remove_spurious(closed_state);
  s.cc = connected_components(g, cv);
  s.nn = node_neighbors_closed(g, cv);
  if (!mn_has_change || mn_vars.empty())
    s.mn = Subgraph{}; // no relational or interval change to slice around
  else
    s.mn = node_neighbors_closed(g, mn_vars);
  return s;
}

namespace {

DeltaSet closed_diff(const ZoneState &a, const ZoneState &b) {
  DeltaSet d;
  for (VarId s = 0; s < a.dim(); ++s)
    for (VarId t = 0; t < a.dim(); ++t) {
      if (s == t)
        continue;
      if (a.at(s, t) != b.at(s, t)) {
        d.de.insert({s, t});
        if (s != kZ0)
          d.dv.insert(s);
        if (t != kZ0)
          d.dv.insert(t);
      }
    }
  return d;
}

bool wants_entry_point(const Cfg &cfg, int b) {
  return b == cfg.entry || cfg.is_merge(b) || cfg.widen_points.count(b) > 0;
}

std::vector<PointInfo> enumerate_points(const Cfg &cfg) {
  std::vector<PointInfo> pts;
  for (int b = 0; b < static_cast<int>(cfg.blocks.size()); ++b) {
    const BasicBlock &blk = cfg.blocks[static_cast<size_t>(b)];
    if (wants_entry_point(cfg, b)) {
      PointInfo pi;
      pi.key = {b, 0};
      pi.label = cfg.widen_points.count(b) ? "widen" : (b == cfg.entry ? "entry" : "merge");
      pts.push_back(pi);
    }
    int n = static_cast<int>(blk.stmts.size());
    for (int i = 0; i < n; ++i) {
      const Stmt &st = blk.stmts[static_cast<size_t>(i)];
      PointInfo pi;
      pi.key = {b, i + 1};
      pi.label = st.text;
      pi.branch_group = st.branch_group;
      pi.is_assert = st.kind == Stmt::SAssert;
      pts.push_back(pi);
    }
    for (int e = 0; e < static_cast<int>(blk.succs.size()); ++e) {
      const CfgEdge &edge = blk.succs[static_cast<size_t>(e)];
      if (!edge.assume)
        continue;
      PointInfo pi;
      pi.key = {b, n + 1 + e};
      pi.label = edge.assume->text;
      pi.branch_group = edge.assume->branch_group;
      pts.push_back(pi);
    }
  }
  return pts;
}

constexpr int kVisitBudget = 1000;

// Shared worklist skeleton. The policy supplies the lattice and transfers
// and may observe merge events.
template <class Policy> struct Worklist {
  const Cfg &cfg;
  Policy &pol;
  std::ostream *trace;
  std::vector<std::optional<typename Policy::State>> in;
  std::vector<int> contribs;
  std::vector<int> visits;

  Worklist(const Cfg &c, Policy &p, std::ostream *tr)
      : cfg(c), pol(p), trace(tr), in(c.blocks.size()), contribs(c.blocks.size(), 0),
        visits(c.blocks.size(), 0) {}

  bool contribute(int t, const typename Policy::State &inc, std::set<int> &work) {
    ++contribs[static_cast<size_t>(t)];
    auto &slot = in[static_cast<size_t>(t)];
    if (!slot) {
      slot = inc;
      work.insert(t);
      return true;
    }
    typename Policy::State cand = pol.join(*slot, inc);
    bool widen_now = cfg.widen_points.count(t) > 0 && contribs[static_cast<size_t>(t)] > 2;
    typename Policy::State next = widen_now ? pol.widen(*slot, cand) : std::move(cand);
    if (pol.equal(next, *slot))
      return false;
    pol.on_merge(t, *slot, next, widen_now);
    slot = std::move(next);
    work.insert(t);
    return true;
  }

  void run() {
    std::set<int> work{cfg.entry};
    in[static_cast<size_t>(cfg.entry)] = pol.top();
    while (!work.empty()) {
      int b = *work.begin();
      work.erase(work.begin());
      if (++visits[static_cast<size_t>(b)] > kVisitBudget)
        throw std::logic_error("worklist iteration budget exceeded");
      typename Policy::State out = *in[static_cast<size_t>(b)];
      for (const Stmt &st : cfg.blocks[static_cast<size_t>(b)].stmts)
        out = pol.transfer(out, st);
      bool changed = false;
      for (const CfgEdge &e : cfg.blocks[static_cast<size_t>(b)].succs) {
        if (e.assume) {
          typename Policy::State inc = pol.transfer(out, *e.assume);
          changed = contribute(e.to, inc, work) || changed;
        } else {
          changed = contribute(e.to, out, work) || changed;
        }
      }
      if (trace)
        *trace << "visit block=" << b << " domain=" << pol.domain_name()
               << " changed=" << (changed ? "true" : "false") << "\n";
    }
  }
};

struct ZonePolicy {
  using State = ZoneState;
  const Cfg &cfg;
  AnalysisResult &res;
  std::map<int, DeltaSet> merge_delta;

  ZonePolicy(const Cfg &c, AnalysisResult &r) : cfg(c), res(r) {}

  const char *domain_name() const { return "zones"; }
  State top() const { return ZoneState::top(cfg.names); }
  State transfer(const State &s, const Stmt &st) const { return transfer_with_delta(s, st).out; }
  State join(const State &a, const State &b) const { return zonemin::join(a, b); }
  State widen(const State &a, const State &b) const { return zonemin::widen(a, b); }
  bool equal(const State &a, const State &b) const { return zone_equals(a, b); }

  void on_merge(int block, const State &oldst, const State &newst, bool widened) {
    StepRecord rec;
    rec.kind = widened ? StepRecord::Widen : StepRecord::Merge;
    rec.at = {block, 0};
    rec.before = oldst.closed();
    rec.after = newst.closed();
    rec.delta = closed_diff(rec.before, rec.after);
    rec.slices = compute_slices(rec.after, rec.delta, /*merge_style=*/true);
    merge_delta[block] = rec.delta;
    res.steps.push_back(std::move(rec));
  }
};

struct IntervalPolicy {
  using State = IntervalState;
  const Cfg &cfg;

  const char *domain_name() const { return "intervals"; }
  State top() const { return IntervalState::top(cfg.names); }
  State transfer(const State &s, const Stmt &st) const { return interval_transfer(s, st); }
  State join(const State &a, const State &b) const { return interval_join_widen(a, b, false); }
  State widen(const State &a, const State &b) const { return interval_join_widen(a, b, true); }
  bool equal(const State &a, const State &b) const { return a == b; }
  void on_merge(int, const State &, const State &, bool) {}
};

struct PredicatePolicy {
  using State = PredicateState;
  const Cfg &cfg;

  const char *domain_name() const { return "predicates"; }
  State top() const { return PredicateState::top(cfg.names); }
  State transfer(const State &s, const Stmt &st) const { return predicate_transfer(s, st); }
  State join(const State &a, const State &b) const { return predicate_join(a, b); }
  State widen(const State &a, const State &b) const { return predicate_join(a, b); }
  bool equal(const State &a, const State &b) const { return a == b; }
  void on_merge(int, const State &, const State &, bool) {}
};

// Final recording pass for the two non-relational domains.
template <class Policy, class Map>
void record_simple(const Cfg &cfg, Worklist<Policy> &wl, Policy &pol, Map &at,
                   std::map<int, typename Policy::State> &in_map) {
  for (int b = 0; b < static_cast<int>(cfg.blocks.size()); ++b) {
    typename Policy::State cur =
        wl.in[static_cast<size_t>(b)] ? *wl.in[static_cast<size_t>(b)] : pol.bottom_state();
    in_map.emplace(b, cur);
    if (wants_entry_point(cfg, b))
      at.emplace(PointKey{b, 0}, cur);
    const auto &blk = cfg.blocks[static_cast<size_t>(b)];
    int n = static_cast<int>(blk.stmts.size());
    for (int i = 0; i < n; ++i) {
      cur = pol.transfer(cur, blk.stmts[static_cast<size_t>(i)]);
      at.emplace(PointKey{b, i + 1}, cur);
    }
    for (int e = 0; e < static_cast<int>(blk.succs.size()); ++e) {
      const CfgEdge &edge = blk.succs[static_cast<size_t>(e)];
      if (!edge.assume)
        continue;
      at.emplace(PointKey{b, n + 1 + e}, pol.transfer(cur, *edge.assume));
    }
  }
}

} // namespace

PointKey in_point_of(const Cfg &cfg, int block, int stmt_index) {
  if (stmt_index >= 1)
    return {block, stmt_index};
  int b = block;
  for (int hops = 0; hops < static_cast<int>(cfg.blocks.size()) + 1; ++hops) {
    if (wants_entry_point(cfg, b))
      return {b, 0};
    int p = cfg.blocks[static_cast<size_t>(b)].preds.at(0);
    const BasicBlock &pb = cfg.blocks[static_cast<size_t>(p)];
    int np = static_cast<int>(pb.stmts.size());
    for (int e = 0; e < static_cast<int>(pb.succs.size()); ++e)
      if (pb.succs[static_cast<size_t>(e)].to == b && pb.succs[static_cast<size_t>(e)].assume)
        return {p, np + 1 + e};
    if (np > 0)
      return {p, np};
    b = p;
  }
  return {block, 0};
}

AnalysisResult run_fixpoint(const Cfg &cfg, DomainKind domain, std::ostream *trace) {
  AnalysisResult res;
  res.domain = domain;
  res.points = enumerate_points(cfg);

  switch (domain) {
  case DomainKind::Zones: {
    ZonePolicy pol(cfg, res);
    Worklist<ZonePolicy> wl(cfg, pol, trace);
    wl.run();
    res.max_block_visits = *std::max_element(wl.visits.begin(), wl.visits.end());
    for (int b = 0; b < static_cast<int>(cfg.blocks.size()); ++b) {
      ZoneState cur = wl.in[static_cast<size_t>(b)]
                          ? wl.in[static_cast<size_t>(b)]->closed()
                          : ZoneState::bottom(cfg.names);
      res.zone_in.emplace(b, cur);
      if (wants_entry_point(cfg, b)) {
        ZonePointRecord pr;
        pr.state = cur;
        pr.delta = pol.merge_delta[b];
        pr.slices = compute_slices(cur, pr.delta, /*merge_style=*/true);
        res.zone_at.emplace(PointKey{b, 0}, std::move(pr));
      }
      const auto &blk = cfg.blocks[static_cast<size_t>(b)];
      int n = static_cast<int>(blk.stmts.size());
      auto record_transfer = [&](const ZoneState &from, const Stmt &st, PointKey key) {
        TransferOut tr = transfer_with_delta(from, st);
        StepRecord rec;
        rec.kind = StepRecord::Transfer;
        rec.at = key;
        rec.before = tr.baseline;
        rec.after = tr.out;
        rec.delta = tr.delta;
        rec.written = tr.written;
        rec.slices =
            compute_slices(tr.out, tr.delta, /*merge_style=*/false, &tr.baseline, &tr.updated);
        res.zone_at.emplace(key, ZonePointRecord{tr.out, tr.delta, rec.slices});
        res.steps.push_back(std::move(rec));
        return tr.out;
      };
      for (int i = 0; i < n; ++i)
        cur = record_transfer(cur, blk.stmts[static_cast<size_t>(i)], {b, i + 1});
      for (int e = 0; e < static_cast<int>(blk.succs.size()); ++e) {
        const CfgEdge &edge = blk.succs[static_cast<size_t>(e)];
        if (!edge.assume)
          continue;
        record_transfer(cur, *edge.assume, {b, n + 1 + e});
      }
    }
    break;
  }
  case DomainKind::Intervals: {
    struct P : IntervalPolicy {
      IntervalState bottom_state() const { return IntervalState::bottom(cfg.names); }
    } pol{{cfg}};
    Worklist<P> wl(cfg, pol, trace);
    wl.run();
    res.max_block_visits = *std::max_element(wl.visits.begin(), wl.visits.end());
    record_simple(cfg, wl, pol, res.interval_at, res.interval_in);
    break;
  }
  case DomainKind::Predicates: {
    struct P : PredicatePolicy {
      PredicateState bottom_state() const { return PredicateState::bottom(cfg.names); }
    } pol{{cfg}};
    Worklist<P> wl(cfg, pol, trace);
    wl.run();
    res.max_block_visits = *std::max_element(wl.visits.begin(), wl.visits.end());
    record_simple(cfg, wl, pol, res.predicate_at, res.predicate_in);
    break;
  }
  }
  return res;
}

} // namespace zonemin
