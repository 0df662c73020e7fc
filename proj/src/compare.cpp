#include "zonemin/compare.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include <json.hpp>

#include "zonemin/parser.hpp"

namespace zonemin {

const char *to_string(Outcome o) {
  switch (o) {
  case Outcome::MorePrecise: return "more";
  case Outcome::Equal: return "equal";
  case Outcome::LessPrecise: return "less";
  case Outcome::Incomparable: return "incomparable";
  }
  return "?";
}

namespace {

std::int64_t abs_or0(std::int64_t v) {
  if (v == kNegInf || v == kPosInf)
    return 0;
  return v < 0 ? -v : v;
}

// Streamed comparison of two vector sets over [-B, B]^|V|.
template <class ZoneMember, class OtherMember>
Outcome classify_impl(int nvars, std::int64_t box, ZoneMember in_zone, OtherMember in_other) {
  double bits = nvars * std::log2(static_cast<double>(2 * box + 1));
  if (bits > 24.0)
    throw GuardError("classify_pair: search space exceeds the 24-bit guard and no "
                     "symbolic fallback is available; shrink the slice or the box");
  std::vector<std::int64_t> point(static_cast<size_t>(nvars), -box);
  bool zone_only = false, other_only = false;
  while (true) {
    bool z = in_zone(point);
    bool o = in_other(point);
    zone_only = zone_only || (z && !o);
    other_only = other_only || (o && !z);
    if (zone_only && other_only)
      return Outcome::Incomparable;
    int i = nvars - 1;
    while (i >= 0 && point[static_cast<size_t>(i)] == box) {
      point[static_cast<size_t>(i)] = -box;
      --i;
    }
    if (i < 0)
      break;
    ++point[static_cast<size_t>(i)];
  }
  if (!zone_only && !other_only)
    return Outcome::Equal;
  // The zone side having extra solutions means it is the weaker invariant.
  return zone_only ? Outcome::LessPrecise : Outcome::MorePrecise;
}

struct SliceEval {
  std::vector<VarId> vars; // sorted
  std::vector<std::tuple<int, int, std::int64_t>> edges; // indices into vars, -1 = Z0

  explicit SliceEval(const Subgraph &g) {
    vars.assign(g.vars.begin(), g.vars.end());
    auto pos = [&](VarId v) -> int {
      if (v == kZ0)
        return -1;
      for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v)
          return static_cast<int>(i);
      return -2; // not representable; callers guarantee endpoints in vars
    };
    for (auto &[s, t, b] : g.edges)
      edges.push_back({pos(s), pos(t), b});
  }

  bool contains(const std::vector<std::int64_t> &point) const {
    for (auto &[s, t, b] : edges) {
      std::int64_t vs = s < 0 ? 0 : point[static_cast<size_t>(s)];
      std::int64_t vt = t < 0 ? 0 : point[static_cast<size_t>(t)];
      if (vs - vt > b)
        return false;
    }
    return true;
  }

  std::int64_t max_const() const {
    std::int64_t m = 0;
    for (auto &[s, t, b] : edges)
      m = std::max(m, b < 0 ? -b : b);
    return m;
  }
};

void check_box(const SliceEval &ev, std::int64_t needed, std::int64_t box) {
  if (ev.vars.empty())
    throw ContractError("classify_pair: empty variable set");
  if (box < needed)
    throw ContractError("classify_pair: box does not dominate the state constants");
}

} // namespace

Outcome classify_pair(const Subgraph &slice, const IntervalState &other, std::int64_t box) {
  SliceEval ev(slice);
  std::int64_t needed = ev.max_const() + 1;
  for (VarId v : ev.vars) {
    const IntervalValue &iv = other.value(v);
    needed = std::max(needed, abs_or0(iv.lo) + 1);
    needed = std::max(needed, abs_or0(iv.hi) + 1);
  }
  check_box(ev, needed, box);
  auto in_other = [&](const std::vector<std::int64_t> &p) {
    if (other.is_bottom())
      return false;
    for (size_t i = 0; i < ev.vars.size(); ++i)
      if (!other.value(ev.vars[i]).contains(p[i]))
        return false;
    return true;
  };
  return classify_impl(static_cast<int>(ev.vars.size()), box,
                       [&](const std::vector<std::int64_t> &p) { return ev.contains(p); },
                       in_other);
}

Outcome classify_pair(const Subgraph &slice, const PredicateState &other, std::int64_t box) {
  SliceEval ev(slice);
  std::int64_t needed = std::max<std::int64_t>(ev.max_const() + 1, 6);
  check_box(ev, needed, box);
  auto in_other = [&](const std::vector<std::int64_t> &p) {
    if (other.is_bottom())
      return false;
    for (size_t i = 0; i < ev.vars.size(); ++i)
      if (!mask_contains(other.mask(ev.vars[i]), p[i]))
        return false;
    return true;
  };
  return classify_impl(static_cast<int>(ev.vars.size()), box,
                       [&](const std::vector<std::int64_t> &p) { return ev.contains(p); },
                       in_other);
}

std::int64_t required_box(const Subgraph &slice, const IntervalState &itv,
                          const PredicateState &pred) {
  (void)pred;
  SliceEval ev(slice);
  std::int64_t needed = std::max<std::int64_t>(ev.max_const() + 1, 6);
  for (VarId v : ev.vars) {
    const IntervalValue &iv = itv.value(v);
    needed = std::max(needed, abs_or0(iv.lo) + 1);
    needed = std::max(needed, abs_or0(iv.hi) + 1);
  }
  return needed;
}

FileAnalysis analyze_file_text(const std::string &text, const std::string &name) {
  FileAnalysis fa;
  fa.file = name;
  Program p = parse_program(text, name);
  fa.cfg = build_cfg(p);
  fa.zones = run_fixpoint(fa.cfg, DomainKind::Zones);
  fa.intervals = run_fixpoint(fa.cfg, DomainKind::Intervals);
  fa.predicates = run_fixpoint(fa.cfg, DomainKind::Predicates);
  return fa;
}

std::vector<ComparePoint> collect_points(const FileAnalysis &fa) {
  std::vector<ComparePoint> out;
  for (const PointInfo &pi : fa.zones.points) {
    ComparePoint cp;
    cp.file = fa.file;
    cp.key = pi.key;
    cp.branch_group = pi.branch_group;
    const ZonePointRecord &zr = fa.zones.zone_at.at(pi.key);
    cp.slices = zr.slices;
    cp.zone_bottom = zr.state.is_bottom();
    cp.intervals = fa.intervals.interval_at.at(pi.key);
    cp.predicates = fa.predicates.predicate_at.at(pi.key);
    out.push_back(std::move(cp));
  }
  return out;
}

namespace {

const Subgraph &slice_of(const Slices &s, MinMethod m) {
  switch (m) {
  case MinMethod::FS: return s.fs;
  case MinMethod::CC: return s.cc;
  case MinMethod::NN: return s.nn;
  case MinMethod::MN: return s.mn;
  }
  return s.fs;
}

constexpr std::array<MinMethod, 4> kMethods = {MinMethod::FS, MinMethod::CC, MinMethod::NN,
                                               MinMethod::MN};

} // namespace

Report compare_corpus(const std::vector<FileAnalysis> &files, std::int64_t box,
                      const std::string &suite) {
  Report rep;
  rep.suite = suite;
  rep.files = static_cast<int>(files.size());
  for (size_t m = 0; m < 4; ++m)
    rep.rows[m].method = kMethods[m];

  // Per file, per method: the per-statement sizes used for the reduction
  // metrics. Branch-grouped points collapse into one entry via max.
  struct Sizes {
    std::array<int, 4> vars{};
    std::array<int, 4> edges{};
  };
  std::array<std::vector<double>, 4> var_pcts_per_file, edge_pcts_per_file;

  for (const FileAnalysis &fa : files) {
    std::vector<ComparePoint> pts = collect_points(fa);
    rep.points += static_cast<int>(pts.size());

    std::map<std::pair<int, int>, Sizes> entries; // (group or unique id) -> sizes
    int unique = 0;
    for (const ComparePoint &cp : pts) {
      // Classification per method
      for (size_t m = 0; m < 4; ++m) {
        const Subgraph &sl = slice_of(cp.slices, kMethods[m]);
        if (cp.zone_bottom || sl.vars.empty()) {
          rep.rows[m].skipped += 1;
          continue;
        }
        std::int64_t eff = std::max(box, required_box(sl, cp.intervals, cp.predicates));
        auto t0 = std::chrono::steady_clock::now();
        Outcome oi = classify_pair(sl, cp.intervals, eff);
        Outcome op = classify_pair(sl, cp.predicates, eff);
        auto t1 = std::chrono::steady_clock::now();
        rep.rows[m].seconds += std::chrono::duration<double>(t1 - t0).count();
        auto bump = [](OutcomeCounts &c, Outcome o) {
          switch (o) {
          case Outcome::MorePrecise: c.more++; break;
          case Outcome::Equal: c.equal++; break;
          case Outcome::LessPrecise: c.less++; break;
          case Outcome::Incomparable: c.incomparable++; break;
          }
        };
        bump(rep.rows[m].vs_intervals, oi);
        bump(rep.rows[m].vs_predicates, op);
      }
      // Size metrics (skip bottom points entirely)
      if (cp.zone_bottom)
        continue;
      std::pair<int, int> key = cp.branch_group >= 0 ? std::make_pair(0, cp.branch_group)
                                                     : std::make_pair(1, unique++);
      Sizes &sz = entries[key];
      for (size_t m = 0; m < 4; ++m) {
        const Subgraph &sl = slice_of(cp.slices, kMethods[m]);
        sz.vars[m] = std::max(sz.vars[m], static_cast<int>(sl.vars.size()));
        sz.edges[m] = std::max(sz.edges[m], static_cast<int>(sl.edges.size()));
      }
    }
    std::array<std::vector<double>, 4> var_pcts, edge_pcts;
    for (auto &[k, sz] : entries) {
      for (size_t m = 1; m < 4; ++m) { // CC vs FS, NN vs CC, MN vs NN
        int pv = sz.vars[m - 1], cv = sz.vars[m];
        int pe = sz.edges[m - 1], ce = sz.edges[m];
        var_pcts[m].push_back(pv > 0 ? 100.0 * (pv - cv) / pv : 0.0);
        edge_pcts[m].push_back(pe > 0 ? 100.0 * (pe - ce) / pe : 0.0);
      }
    }
    auto mean = [](const std::vector<double> &v) {
      if (v.empty())
        return 0.0;
      double s = 0;
      for (double x : v)
        s += x;
      return s / static_cast<double>(v.size());
    };
    for (size_t m = 1; m < 4; ++m) {
      var_pcts_per_file[m].push_back(mean(var_pcts[m]));
      edge_pcts_per_file[m].push_back(mean(edge_pcts[m]));
    }
  }
  auto mean = [](const std::vector<double> &v) {
    if (v.empty())
      return 0.0;
    double s = 0;
    for (double x : v)
      s += x;
    return s / static_cast<double>(v.size());
  };
  for (size_t m = 1; m < 4; ++m) {
    rep.rows[m].var_reduction_pct = mean(var_pcts_per_file[m]);
    rep.rows[m].edge_reduction_pct = mean(edge_pcts_per_file[m]);
  }
  return rep;
}

std::string report_to_json(const Report &r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["rows"] = nlohmann::ordered_json::array();
  for (const MethodReport &row : r.rows) {
    nlohmann::ordered_json jr;
    jr["method"] = to_string(row.method);
    jr["var_reduction_pct"] = row.var_reduction_pct;
    jr["edge_reduction_pct"] = row.edge_reduction_pct;
    jr["vs_intervals"] = {{"more", row.vs_intervals.more}, {"equal", row.vs_intervals.equal}};
    jr["vs_predicates"] = {{"more", row.vs_predicates.more},
                           {"equal", row.vs_predicates.equal},
                           {"less", row.vs_predicates.less},
                           {"incomparable", row.vs_predicates.incomparable}};
    jr["skipped"] = row.skipped;
    jr["seconds"] = row.seconds;
    j["rows"].push_back(jr);
  }
  return j.dump(2) + "\n";
}

} // namespace zonemin
