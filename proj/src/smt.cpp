#include "zonemin/smt.hpp"

#include <fstream>
#include <sstream>

namespace zonemin {

namespace {

void header(std::ostringstream &os) { os << "(set-logic QF_LIA)\n"; }
void footer(std::ostringstream &os) { os << "(check-sat)\n"; }

} // namespace

std::string smtlib_of(const Subgraph &slice, const ZoneState::Names &names) {
  std::ostringstream os;
  header(os);
  for (VarId v : slice.vars)
    os << "(declare-const " << (*names)[static_cast<size_t>(v)] << " Int)\n";
  for (auto &[s, t, b] : slice.edges) {
    if (t == kZ0)
      os << "(assert (<= " << (*names)[static_cast<size_t>(s)] << " " << b << "))\n";
    else if (s == kZ0)
      os << "(assert (<= (- 0 " << (*names)[static_cast<size_t>(t)] << ") " << b << "))\n";
    else
      os << "(assert (<= (- " << (*names)[static_cast<size_t>(s)] << " "
         << (*names)[static_cast<size_t>(t)] << ") " << b << "))\n";
  }
  footer(os);
  return os.str();
}

std::string smtlib_of(const IntervalState &s) {
  std::ostringstream os;
  header(os);
  for (VarId v = 1; v < s.dim(); ++v)
    os << "(declare-const " << (*s.names())[static_cast<size_t>(v)] << " Int)\n";
  if (s.is_bottom()) {
    os << "(assert false)\n";
  } else {
    for (VarId v = 1; v < s.dim(); ++v) {
      const IntervalValue &iv = s.value(v);
      const std::string &n = (*s.names())[static_cast<size_t>(v)];
      if (iv.hi != kPosInf)
        os << "(assert (<= " << n << " " << iv.hi << "))\n";
      if (iv.lo != kNegInf)
        os << "(assert (>= " << n << " " << iv.lo << "))\n";
    }
  }
  footer(os);
  return os.str();
}

std::string smtlib_of(const PredicateState &s) {
  std::ostringstream os;
  header(os);
  for (VarId v = 1; v < s.dim(); ++v)
    os << "(declare-const " << (*s.names())[static_cast<size_t>(v)] << " Int)\n";
  if (s.is_bottom()) {
    os << "(assert false)\n";
  } else {
    for (VarId v = 1; v < s.dim(); ++v) {
      const std::string &n = (*s.names())[static_cast<size_t>(v)];
      PredMask m = s.mask(v);
      if (m == kPredTop)
        continue; // no constraint
      os << "(assert (or";
      for (int i = 0; i < 7; ++i) {
        if (!((m >> i) & 1))
          continue;
        const PredicateElement &e = kPredicateElements[static_cast<size_t>(i)];
        if (e.lo == kNegInf)
          os << " (<= " << n << " " << e.hi << ")";
        else if (e.hi == kPosInf)
          os << " (>= " << n << " " << e.lo << ")";
        else
          os << " (and (>= " << n << " " << e.lo << ") (<= " << n << " " << e.hi << "))";
      }
      os << "))\n";
    }
  }
  footer(os);
  return os.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out)
    throw IoError("write failed for '" + path + "'");
}

} // namespace zonemin
