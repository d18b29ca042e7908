#pragma once

#include <cstdint>

#include "locz/graph.hpp"

namespace locz {

struct GnpParams {
  Vertex n = 1;
  double p = 0.0;
  std::uint64_t seed = 0;
};

// Binomial random graph G(n, p).
//
// Pairs are visited in lexicographic order (0,1), (0,2), ..., (n-2,n-1) and
// gaps between included pairs are drawn geometrically, so the cost is
// O(n + m). The stream is consumed twice (degree count, then fill) from the
// same seed; the resulting graph depends only on (n, p, seed).
Graph generate_gnp(const GnpParams& params);

}  // namespace locz
