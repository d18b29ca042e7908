#include "locz/gnp.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "locz/error.hpp"
#include "locz/rng.hpp"

namespace locz {

namespace {

// Calls f(u, v) for every included pair, in lexicographic order.
template <typename F>
void for_each_gnp_pair(const GnpParams& params, F&& f) {
  const std::uint64_t n = params.n;
  if (n < 2 || params.p <= 0.0) return;
  if (params.p >= 1.0) {
    for (std::uint64_t u = 0; u + 1 < n; ++u) {
      for (std::uint64_t v = u + 1; v < n; ++v) f(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return;
  }
  Rng rng(params.seed);
  const double log_q = std::log1p(-params.p);
  const double total_pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  // (u, v) is the last pair considered; the walk starts just before (0, 1).
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  while (true) {
    const double gap = std::floor(std::log1p(-rng.uniform()) / log_q);
    if (!(gap < total_pairs)) return;  // also catches inf
    v += 1 + static_cast<std::uint64_t>(gap);
    while (v >= n && u + 1 < n) {
      // Row u holds v in [u+1, n-1]; row u+1 starts at u+2.
      v = v - n + u + 2;
      ++u;
    }
    if (u + 1 >= n) return;
    f(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
}

}  // namespace

Graph generate_gnp(const GnpParams& params) {
  if (params.n < 1) throw Error(ErrorCode::InvalidArgument, "G(n,p) needs n >= 1");
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "G(n,p) needs 0 <= p <= 1, got " + std::to_string(params.p));
  }
  std::vector<std::uint64_t> degrees(params.n, 0);
  for_each_gnp_pair(params, [&](Vertex u, Vertex v) {
    ++degrees[u];
    ++degrees[v];
  });
  return Graph::from_lexicographic(params.n, degrees, [&](auto&& add) {
    for_each_gnp_pair(params, add);
  });
}

}  // namespace locz
