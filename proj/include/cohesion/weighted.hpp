#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohesion/cluster_family.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/strong_truss.hpp"
#include "cohesion/triangles.hpp"
#include "cohesion/truss.hpp"

namespace cohesion {

enum class TriangleWeightKind { minimum, harmonic };

struct TriangleWeightSpec {
  TriangleWeightKind kind = TriangleWeightKind::minimum;
  double alpha = 1.0;
};

inline constexpr std::uint64_t kDefaultSupportCap = std::uint64_t{1} << 24;

namespace detail {

// Floor that forgives representation error, so 3 * (1/3) floors to 1.
inline std::uint64_t tolerant_floor(double x) {
  double r = std::floor(x + 1e-9 * std::max(1.0, std::fabs(x)));
  return r <= 0 ? 0 : static_cast<std::uint64_t>(r);
}

}  // namespace detail

inline std::uint64_t triangle_weight(const TriangleWeightSpec& spec, double w1, double w2,
                                     double w3) {
  if (!(w1 > 0 && w2 > 0 && w3 > 0)) throw validation_error("edge weights must be positive");
  if (!(spec.alpha > 0)) throw validation_error("alpha must be positive");
  double x = spec.kind == TriangleWeightKind::minimum
                 ? spec.alpha * std::min({w1, w2, w3})
                 : spec.alpha / (1.0 / w1 + 1.0 / w2 + 1.0 / w3);
  return detail::tolerant_floor(x);
}

struct WeightedSupportMap {
  std::vector<std::uint64_t> sw;
  std::uint64_t max_support = 0;
};

inline WeightedSupportMap weighted_supports(const Graph& g, const TriangleWeightSpec& spec) {
  WeightedSupportMap out;
  out.sw.assign(g.edge_count(), 0);
  for_each_triangle(g, [&](EdgeId a, EdgeId b, EdgeId c) {
    std::uint64_t w = triangle_weight(spec, g.edge(a).weight, g.edge(b).weight, g.edge(c).weight);
    out.sw[a] += w;
    out.sw[b] += w;
    out.sw[c] += w;
  });
  for (std::uint64_t s : out.sw) out.max_support = std::max(out.max_support, s);
  return out;
}

inline KClassDecomposition weighted_k_classes(const Graph& g, const TriangleWeightSpec& spec,
                                              std::uint64_t support_cap = kDefaultSupportCap) {
  WeightedSupportMap s = weighted_supports(g, spec);
  if (s.max_support > support_cap)
    throw validation_error("weighted support " + std::to_string(s.max_support) +
                           " exceeds the cap of " + std::to_string(support_cap) +
                           "; lower alpha or raise the cap");
  return detail::classes_from_phi(detail::peel(g, s.sw, [&](EdgeId a, EdgeId b, EdgeId c) {
    return triangle_weight(spec, g.edge(a).weight, g.edge(b).weight, g.edge(c).weight);
  }));
}

inline ClusterFamily weighted_strong_family(const Graph& g, const KClassDecomposition& d) {
  return strong_truss_family(g, d);
}

}  // namespace cohesion
