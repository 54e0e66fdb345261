#include "sortflow/generators.hpp"

#include <charconv>
#include <map>
#include <random>
#include <string>

#include "sortflow/error.hpp"

namespace sortflow {

namespace {

// Unbiased draw in [0, bound) from raw 64-bit outputs.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

std::int64_t parse_int(std::string_view text, std::string_view key) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw FlowError(ErrorCode::InvalidArgument,
                    "bad integer '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

std::uint64_t parse_uint(std::string_view text, std::string_view key) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw FlowError(ErrorCode::InvalidArgument,
                    "bad integer '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

}  // namespace

Instance gen_line(std::int32_t k, Capacity cap) {
  if (k < 1) throw FlowError(ErrorCode::InvalidArgument, "line length must be >= 1");
  if (cap < 0) throw FlowError(ErrorCode::InvalidArgument, "capacity must be >= 0");
  Instance inst;
  inst.vertex_count = k + 1;
  inst.source = 0;
  inst.sink = k;
  for (std::int32_t i = 0; i < k; ++i) inst.arcs.push_back({i, i + 1, cap});
  inst.label = "line(k=" + std::to_string(k) + ",cap=" + std::to_string(cap) + ")";
  return inst;
}

Instance gen_two_iteration() {
  constexpr VertexId s = 0, u = 1, v = 2, t = 3;
  Instance inst;
  inst.vertex_count = 4;
  inst.source = s;
  inst.sink = t;
  inst.arcs = {{s, u, 2}, {u, t, 1}, {u, v, 1}, {v, t, 1}};
  inst.label = "two-iteration";
  return inst;
}

Instance gen_layered_blocking(std::int32_t layers, std::int32_t width,
                              std::span<const Capacity> cap_profile) {
  if (layers < 1 || width < 1) {
    throw FlowError(ErrorCode::InvalidArgument, "layers and width must be >= 1");
  }
  if (cap_profile.size() != static_cast<std::size_t>(layers) + 1) {
    throw FlowError(ErrorCode::InvalidProfile, "profile needs L+1 entries");
  }
  for (std::size_t i = 0; i < cap_profile.size(); ++i) {
    if (cap_profile[i] <= 0 || (i > 0 && cap_profile[i] >= cap_profile[i - 1])) {
      throw FlowError(ErrorCode::InvalidProfile,
                      "profile must be positive and strictly decreasing toward t");
    }
  }

  Instance inst;
  inst.vertex_count = layers * width + 2;
  inst.source = 0;
  inst.sink = inst.vertex_count - 1;
  auto vertex = [width](std::int32_t layer, std::int32_t j) { return 1 + (layer - 1) * width + j; };
  const Capacity blocking = cap_profile.back();

  for (std::int32_t j = 0; j < width; ++j) inst.arcs.push_back({inst.source, vertex(1, j), cap_profile[0]});
  for (std::int32_t layer = 1; layer <= layers; ++layer) {
    for (std::int32_t j = 0; j < width; ++j) {
      const VertexId x = vertex(layer, j);
      if (layer == layers) {
        inst.arcs.push_back({x, inst.sink, cap_profile[static_cast<std::size_t>(layer)]});
        continue;
      }
      inst.arcs.push_back({x, inst.sink, blocking});
      for (std::int32_t k = 0; k < width; ++k) {
        inst.arcs.push_back({x, vertex(layer + 1, k), cap_profile[static_cast<std::size_t>(layer)]});
      }
    }
  }

  inst.label = "layered(L=" + std::to_string(layers) + ",W=" + std::to_string(width) + ",profile=";
  for (std::size_t i = 0; i < cap_profile.size(); ++i) {
    inst.label += (i ? "/" : "") + std::to_string(cap_profile[i]);
  }
  inst.label += ")";
  return inst;
}

std::vector<Capacity> default_profile(std::int32_t layers) {
  std::vector<Capacity> profile;
  for (std::int32_t i = 0; i <= layers; ++i) profile.push_back(layers + 1 - i);
  return profile;
}

Instance gen_random(std::int32_t n, std::int32_t m, Capacity max_cap, std::uint64_t seed) {
  if (n < 2 || m < 1 || max_cap < 1) {
    throw FlowError(ErrorCode::InvalidArgument, "gen_random needs n >= 2, m >= 1, max_cap >= 1");
  }
  std::mt19937_64 rng(seed);
  const auto un = static_cast<std::uint64_t>(n);
  Instance inst;
  inst.vertex_count = n;
  inst.source = 0;
  inst.sink = n - 1;
  auto capacity = [&] { return 1 + static_cast<Capacity>(uniform_below(rng, static_cast<std::uint64_t>(max_cap))); };

  for (std::int32_t i = 0; i < m; ++i) {
    VertexId tail = 0;
    VertexId head = 0;
    if (i == 0) {
      tail = inst.source;
      head = m == 1 ? inst.sink : 1 + static_cast<VertexId>(uniform_below(rng, un - 1));
    } else if (i == 1) {
      head = inst.sink;
      tail = static_cast<VertexId>(uniform_below(rng, un - 1));
    } else {
      tail = static_cast<VertexId>(uniform_below(rng, un));
      head = static_cast<VertexId>(uniform_below(rng, un - 1));
      if (head >= tail) ++head;
    }
    inst.arcs.push_back({tail, head, capacity()});
  }
  inst.label = "random(n=" + std::to_string(n) + ",m=" + std::to_string(m) +
               ",max_cap=" + std::to_string(max_cap) + ",seed=" + std::to_string(seed) + ")";
  return inst;
}

Instance gen_sweep(std::uint64_t seed, std::int32_t n_max, std::int32_t m_max, Capacity max_cap) {
  if (n_max < 2 || m_max < 1) {
    throw FlowError(ErrorCode::InvalidArgument, "sweep needs n_max >= 2 and m_max >= 1");
  }
  std::mt19937_64 sizes(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto n = 2 + static_cast<std::int32_t>(uniform_below(sizes, static_cast<std::uint64_t>(n_max - 1)));
  const auto m = 1 + static_cast<std::int32_t>(uniform_below(sizes, static_cast<std::uint64_t>(m_max)));
  return gen_random(n, m, max_cap, seed);
}

Instance instance_from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view family = spec.substr(0, colon);
  std::map<std::string, std::string_view, std::less<>> params;
  if (colon != std::string_view::npos) {
    for (const auto part : split(spec.substr(colon + 1), ',')) {
      if (part.empty()) continue;
      const auto eq = part.find('=');
      if (eq == std::string_view::npos) {
        throw FlowError(ErrorCode::InvalidArgument, "expected key=value in '" + std::string(part) + "'");
      }
      params[std::string(part.substr(0, eq))] = part.substr(eq + 1);
    }
  }
  auto get = [&](std::string_view key, std::int64_t fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : parse_int(it->second, key);
  };

  if (family == "line") {
    return gen_line(static_cast<std::int32_t>(get("k", 1)), get("cap", 1));
  }
  if (family == "two-iteration") return gen_two_iteration();
  if (family == "layered") {
    const auto layers = static_cast<std::int32_t>(get("L", 1));
    const auto width = static_cast<std::int32_t>(get("W", 1));
    std::vector<Capacity> profile;
    if (const auto it = params.find("profile"); it != params.end()) {
      for (const auto p : split(it->second, '/')) profile.push_back(parse_int(p, "profile"));
    } else {
      profile = default_profile(layers);
    }
    return gen_layered_blocking(layers, width, profile);
  }
  if (family == "random") {
    std::uint64_t seed = 0;
    if (const auto it = params.find("seed"); it != params.end()) seed = parse_uint(it->second, "seed");
    return gen_random(static_cast<std::int32_t>(get("n", 10)), static_cast<std::int32_t>(get("m", 30)),
                      get("max_cap", 10), seed);
  }
  throw FlowError(ErrorCode::InvalidArgument, "unknown generator family '" + std::string(family) + "'");
}

}  // namespace sortflow
