#pragma once

#include <string>
#include <vector>

#include "sortflow/network.hpp"

namespace sortflow {

/// Serializable problem description shared by generators, DIMACS I/O and
/// the oracles.
struct Instance {
  VertexId vertex_count = 0;
  std::vector<ArcSpec> arcs;
  VertexId source = 0;
  VertexId sink = 1;
  std::string label;

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline Network build_network(const Instance& inst) {
  return build_network(inst.vertex_count, inst.arcs, inst.source, inst.sink);
}

}  // namespace sortflow
