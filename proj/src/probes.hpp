#pragma once

#include <map>
#include <random>

#include "framelab/sequence.hpp"

namespace framelab::detail {

/// Random unit vector: entries uniform on [-1, 1], normalized in the space's
/// p-norm. Sequence-space probes are supported on 1..width.
inline Vec random_unit_probe(const ModelSpace& space, std::mt19937_64& rng, Index width = 12) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Index n = space.is_finite() ? space.dim() : width;
  for (;;) {
    std::map<Index, double> e;
    for (Index i = 1; i <= n; ++i) {
      double v = u(rng);
      if (v != 0.0) e[i] = v;
    }
    Vec x(space, std::move(e));
    double norm = vector_p_norm(x);
    if (norm > 1e-3) {
      std::map<Index, double> scaled;
      for (const auto& [i, v] : x.entries()) scaled[i] = v / norm;
      return Vec(space, std::move(scaled));
    }
  }
}

}  // namespace framelab::detail
