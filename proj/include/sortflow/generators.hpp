#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "sortflow/instance.hpp"

namespace sortflow {

/// Path s = v0 -> v1 -> ... -> vk = t with every capacity equal to `cap`.
Instance gen_line(std::int32_t k, Capacity cap);

/// s, u, v, t with arcs s->u 2, u->t 1, u->v 1, v->t 1. The direct arc u->t
/// blocks, so half of the excess reaches t only in a second round.
Instance gen_two_iteration();

/// Layered DAG s -> layer 1 -> ... -> layer L -> t with W vertices per layer.
///
/// `cap_profile[0]` is the capacity of s -> layer 1, `cap_profile[i]` that of
/// the complete bipartite arcs layer i -> layer i+1, and `cap_profile[L]` that
/// of layer L -> t. Every vertex in layers 1..L-1 also owns a blocking arc to
/// t of capacity `cap_profile[L]`, listed before its forward arcs. The profile
/// must be positive and strictly decreasing toward t (InvalidProfile otherwise).
Instance gen_layered_blocking(std::int32_t layers, std::int32_t width,
                              std::span<const Capacity> cap_profile);

/// Seeded random network on n vertices (s = 0, t = n-1) with m arcs.
///
/// Uses std::mt19937_64 and rejection sampling for bounded draws, so output
/// is identical across platforms. Arc 0 leaves s and arc 1 enters t; the
/// remaining arcs pick a uniform tail and a uniform distinct head. Capacities
/// are uniform in [1, max_cap].
Instance gen_random(std::int32_t n, std::int32_t m, Capacity max_cap, std::uint64_t seed);

/// Random instance whose size is itself drawn from the seed:
/// n in [2, n_max], m in [1, m_max].
Instance gen_sweep(std::uint64_t seed, std::int32_t n_max, std::int32_t m_max, Capacity max_cap);

/// Parses a generator spec such as "line:k=3,cap=3", "two-iteration",
/// "layered:L=2,W=2,profile=4/2/1" or "random:n=10,m=30,max_cap=5,seed=7".
Instance instance_from_spec(std::string_view spec);

/// Default strictly decreasing profile L+1, L, ..., 1.
std::vector<Capacity> default_profile(std::int32_t layers);

}  // namespace sortflow
