#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "zonemin/engine.hpp"

namespace zonemin {

enum class Outcome { MorePrecise, Equal, LessPrecise, Incomparable };

const char *to_string(Outcome o);

// Bounded-enumeration entailment over the slice's variable set V: compare
// the slice's solutions against the other domain's concretization restricted
// to V, both over [-B, B]^|V|. "MorePrecise" means the zone side is the
// strictly smaller set. Throws GuardError when the search space is too big
// and ContractError when V is empty or B does not dominate the constants.
Outcome classify_pair(const Subgraph &slice, const IntervalState &other, std::int64_t box);
Outcome classify_pair(const Subgraph &slice, const PredicateState &other, std::int64_t box);

// Smallest box that satisfies classify_pair's precondition for this point.
std::int64_t required_box(const Subgraph &slice, const IntervalState &itv,
                          const PredicateState &pred);

struct OutcomeCounts {
  int more = 0, equal = 0, less = 0, incomparable = 0;
  int total() const { return more + equal + less + incomparable; }
};

struct MethodReport {
  MinMethod method = MinMethod::FS;
  double var_reduction_pct = 0.0;  // vs the preceding technique
  double edge_reduction_pct = 0.0;
  OutcomeCounts vs_intervals;
  OutcomeCounts vs_predicates;
  int skipped = 0; // bottom points and empty slices
  double seconds = 0.0;
};

struct Report {
  std::string suite;
  std::array<MethodReport, 4> rows; // FS, CC, NN, MN
  int files = 0;
  int points = 0; // program points considered (per method before skips)
};

struct ComparePoint {
  std::string file;
  PointKey key;
  int branch_group = -1;
  Slices slices;
  bool zone_bottom = false;
  IntervalState intervals;
  PredicateState predicates;
};

// One analyzed corpus file: the three fixpoints zipped by program point.
struct FileAnalysis {
  std::string file;
  Cfg cfg;
  AnalysisResult zones, intervals, predicates;
};

FileAnalysis analyze_file_text(const std::string &text, const std::string &name);

std::vector<ComparePoint> collect_points(const FileAnalysis &fa);

// Classify every (point, method) pair and aggregate Table-style rows:
// per-statement percentage reductions (branch points take the max over
// their two out-branches), averaged per file and then across files.
Report compare_corpus(const std::vector<FileAnalysis> &files, std::int64_t box,
                      const std::string &suite);

// Pinned schema; `seconds` is the only non-deterministic field.
std::string report_to_json(const Report &r);

} // namespace zonemin
