#pragma once

#include <string>

#include "zonemin/interval.hpp"
#include "zonemin/minimize.hpp"
#include "zonemin/predicate.hpp"

namespace zonemin {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// SMT-LIB2 scripts: integer constants for every variable, one assertion per
// constraint (difference atoms for zones, range atoms for the others),
// deterministic (row, col) / variable ordering.
std::string smtlib_of(const Subgraph &slice, const ZoneState::Names &names);
std::string smtlib_of(const IntervalState &s);
std::string smtlib_of(const PredicateState &s);

void write_file(const std::string &path, const std::string &content);

} // namespace zonemin
