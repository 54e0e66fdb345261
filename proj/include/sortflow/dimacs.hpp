#pragma once

#include <string>
#include <string_view>

#include "sortflow/instance.hpp"

namespace sortflow {

/// Parses DIMACS max-flow text (1-based ids). A comment of the form
/// "c label <text>" restores Instance::label.
Instance parse_dimacs(std::string_view text);

/// Canonical writer: optional "c label" line, then "p max n m", "n <s> s",
/// "n <t> t" and the arcs in stored order, each line ending in '\n'.
std::string write_dimacs(const Instance& inst);

Instance read_dimacs_file(const std::string& path);

}  // namespace sortflow
