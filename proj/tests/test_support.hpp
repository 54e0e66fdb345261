#pragma once

#include <random>
#include <vector>

#include "sortflow/engine.hpp"
#include "sortflow/network.hpp"

namespace sortflow::testing {

inline Network single_arc(Capacity cap) {
  const std::vector<ArcSpec> arcs{{0, 1, cap}};
  return build_network(2, arcs, 0, 1);
}

inline bool has_violation(const std::vector<Violation>& report, Violation::Kind kind) {
  for (const auto& v : report) {
    if (v.kind == kind) return true;
  }
  return false;
}

}  // namespace sortflow::testing
