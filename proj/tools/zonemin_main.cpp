#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "zonemin/compare.hpp"
#include "zonemin/engine.hpp"
#include "zonemin/parser.hpp"
#include "zonemin/smt.hpp"

namespace fs = std::filesystem;
using namespace zonemin;

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string stem_of(const std::string &path) { return fs::path(path).stem().string(); }

MinMethod method_of(const std::string &m) {
  if (m == "fs") return MinMethod::FS;
  if (m == "cc") return MinMethod::CC;
  if (m == "nn") return MinMethod::NN;
  if (m == "mn") return MinMethod::MN;
  throw CLI::ValidationError("--method", "unknown method '" + m + "'");
}

int cmd_analyze(const std::string &file, const std::string &domain, bool dump, bool trace) {
  Program p = parse_program(read_file(file), stem_of(file));
  Cfg cfg = build_cfg(p);
  DomainKind d = domain == "intervals"  ? DomainKind::Intervals
                 : domain == "predicates" ? DomainKind::Predicates
                                          : DomainKind::Zones;
  AnalysisResult res = run_fixpoint(cfg, d, trace ? &std::cout : nullptr);
  std::cout << "analyzed " << file << ": " << res.points.size() << " program points, domain "
            << to_string(d) << "\n";
  for (const PointInfo &pi : res.points) {
    if (!dump && !pi.is_assert)
      continue;
    std::cout << "-- point " << pi.key.block << ":" << pi.key.index << " (" << pi.label << ")\n";
    switch (d) {
    case DomainKind::Zones:
      std::cout << res.zone_at.at(pi.key).state.dump();
      break;
    case DomainKind::Intervals:
      std::cout << res.interval_at.at(pi.key).dump();
      break;
    case DomainKind::Predicates:
      std::cout << res.predicate_at.at(pi.key).dump();
      break;
    }
  }
  return 0;
}

int cmd_slice(const std::string &file, const std::string &method, bool arbitrary) {
  Program p = parse_program(read_file(file), stem_of(file));
  Cfg cfg = build_cfg(p);
  AnalysisResult res = run_fixpoint(cfg, DomainKind::Zones);
  MinMethod m = method_of(method);
  bool any = false;
  for (int b = 0; b < static_cast<int>(cfg.blocks.size()); ++b) {
    const auto &stmts = cfg.blocks[static_cast<size_t>(b)].stmts;
    for (int i = 0; i < static_cast<int>(stmts.size()); ++i) {
      const Stmt &st = stmts[static_cast<size_t>(i)];
      if (st.kind != Stmt::SAssert)
        continue;
      any = true;
      PointKey key = in_point_of(cfg, b, i);
      const ZonePointRecord &zr = res.zone_at.at(key);
    Subgraph sl;
    if (!arbitrary) {
      switch (m) {
      case MinMethod::FS: sl = zr.slices.fs; break;
      case MinMethod::CC: sl = zr.slices.cc; break;
      case MinMethod::NN: sl = zr.slices.nn; break;
      case MinMethod::MN: sl = zr.slices.mn; break;
      }
      } else if (!zr.state.is_bottom()) {
        // Recompute with the arbitrary-zone traversal on the reduced state.
        ZoneState g = remove_spurious(zr.state);
        std::set<VarId> cv = slicing_vars(zr.delta, false);
        if (m == MinMethod::FS || cv.empty())
          sl = full_state(g);
        else if (m == MinMethod::CC)
          sl = connected_components(g, cv);
        else if (m == MinMethod::MN && zr.delta.de.empty())
          sl = Subgraph{};
        else
          sl = node_neighbors_arbitrary(g, m == MinMethod::MN ? updated_vars(zr.delta.de) : cv);
      }
      std::cout << "-- " << file << ":" << st.line << " " << st.text << "\n";
      if (zr.state.is_bottom())
        std::cout << "unreachable (bottom)\n";
      else
        std::cout << sl.serialize(cfg.names);
    }
  }
  if (!any)
    std::cout << "no assert statements in " << file << "\n";
  return 0;
}

int cmd_compare(const std::string &dir, const std::string &against, const std::string &methods,
                std::int64_t box, const std::string &report_path) {
  std::vector<std::string> files;
  for (const auto &e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".tir")
      files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty())
    std::cerr << "warning: no .tir files under " << dir << "\n";
  std::vector<FileAnalysis> analyses;
  for (const std::string &f : files)
    analyses.push_back(analyze_file_text(read_file(f), stem_of(f)));
  Report rep = compare_corpus(analyses, box, fs::path(dir).filename().string());

  std::set<std::string> wanted;
  {
    std::stringstream ss(methods);
    std::string tok;
    while (std::getline(ss, tok, ','))
      wanted.insert(tok);
  }
  std::cout << "suite " << rep.suite << ": " << rep.files << " files, " << rep.points
            << " program points\n";
  for (const MethodReport &row : rep.rows) {
    std::string key = to_string(row.method);
    std::transform(key.begin(), key.end(), key.begin(), ::tolower);
    if (!wanted.count(key))
      continue;
    std::cout << to_string(row.method) << "  dV%=" << row.var_reduction_pct
              << " dE%=" << row.edge_reduction_pct;
    if (against == "intervals")
      std::cout << "  vs intervals: more=" << row.vs_intervals.more
                << " equal=" << row.vs_intervals.equal;
    else
      std::cout << "  vs predicates: more=" << row.vs_predicates.more
                << " equal=" << row.vs_predicates.equal << " less=" << row.vs_predicates.less
                << " incomparable=" << row.vs_predicates.incomparable;
    std::cout << " skipped=" << row.skipped << " seconds=" << row.seconds << "\n";
  }
  if (!report_path.empty())
    write_file(report_path, report_to_json(rep));
  return 0;
}

int cmd_export_smt(const std::string &file, const std::string &out_dir,
                   const std::string &method) {
  FileAnalysis fa = analyze_file_text(read_file(file), stem_of(file));
  MinMethod m = method_of(method);
  fs::create_directories(out_dir);
  for (const PointInfo &pi : fa.zones.points) {
    std::string base = out_dir + "/" + fa.file + "." + std::to_string(pi.key.block) + "_" +
                       std::to_string(pi.key.index);
    const ZonePointRecord &zr = fa.zones.zone_at.at(pi.key);
    const Subgraph *sl = &zr.slices.fs;
    if (m == MinMethod::CC) sl = &zr.slices.cc;
    if (m == MinMethod::NN) sl = &zr.slices.nn;
    if (m == MinMethod::MN) sl = &zr.slices.mn;
    if (zr.state.is_bottom())
      write_file(base + ".zones.smt2", "(set-logic QF_LIA)\n(assert false)\n(check-sat)\n");
    else
      write_file(base + ".zones.smt2", smtlib_of(*sl, fa.cfg.names));
    write_file(base + ".intervals.smt2", smtlib_of(fa.intervals.interval_at.at(pi.key)));
    write_file(base + ".predicates.smt2", smtlib_of(fa.predicates.predicate_at.at(pi.key)));
  }
  std::cout << "wrote SMT-LIB scripts for " << fa.zones.points.size() << " points to " << out_dir
            << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Zone-domain analyzer with changed-set slicing and domain comparison"};
  app.require_subcommand(1);

  std::string file, domain = "zones", method = "fs", dir, against = "intervals";
  std::string methods = "fs,cc,nn,mn", report_path, out_dir;
  std::int64_t box = 16;
  bool dump = false, trace = false, arbitrary = false, closed = false;

  auto *analyze = app.add_subcommand("analyze", "run one domain over a .tir file");
  analyze->add_option("file", file)->required();
  analyze->add_option("--domain", domain)->check(CLI::IsMember({"zones", "intervals", "predicates"}));
  analyze->add_flag("--dump", dump);
  analyze->add_flag("--trace", trace);

  auto *slice = app.add_subcommand("slice", "print changed-set slices at assert points");
  slice->add_option("file", file)->required();
  slice->add_option("--method", method)->check(CLI::IsMember({"fs", "cc", "nn", "mn"}));
  slice->add_flag("--arbitrary", arbitrary);
  slice->add_flag("--closed", closed);

  auto *compare = app.add_subcommand("compare", "classify zones against another domain per point");
  compare->add_option("dir", dir)->required();
  compare->add_option("--against", against)->check(CLI::IsMember({"intervals", "predicates"}));
  compare->add_option("--methods", methods);
  compare->add_option("--box", box);
  compare->add_option("--report", report_path);

  auto *exp = app.add_subcommand("export-smt", "write per-point SMT-LIB scripts");
  exp->add_option("file", file)->required();
  exp->add_option("--out", out_dir)->required();
  exp->add_option("--method", method)->check(CLI::IsMember({"fs", "cc", "nn", "mn"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(analyze))
      return cmd_analyze(file, domain, dump, trace);
    if (app.got_subcommand(slice))
      return cmd_slice(file, method, arbitrary);
    if (app.got_subcommand(compare))
      return cmd_compare(dir, against, methods, box, report_path);
    if (app.got_subcommand(exp))
      return cmd_export_smt(file, out_dir, method);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
