#pragma once

// Independent reference computations used by the tests. None of these call
// into the library's BFS, partition or solver code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "locz/gnp.hpp"
#include "locz/graph.hpp"
#include "locz/rng.hpp"

namespace testing_support {

using locz::Distance;
using locz::Edge;
using locz::Graph;
using locz::Vertex;

constexpr Distance kInf = locz::kUnreachable;

// All-pairs distances by Floyd-Warshall over the edge list.
inline std::vector<std::vector<Distance>> floyd(const Graph& g) {
  const Vertex n = g.vertex_count();
  const std::uint64_t big = 1ULL << 40;
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, big));
  for (Vertex v = 0; v < n; ++v) d[v][v] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (Vertex k = 0; k < n; ++k) {
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  std::vector<std::vector<Distance>> out(n, std::vector<Distance>(n));
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) out[i][j] = d[i][j] >= big ? kInf : static_cast<Distance>(d[i][j]);
  }
  return out;
}

// Calls f(graph) for every connected labeled graph on n vertices.
inline void for_each_connected_graph(Vertex n, const std::function<void(const Graph&)>& f) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> e;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if ((mask >> b) & 1U) e.push_back(pairs[b]);
    }
    // Union-find connectivity, independent of the library's BFS.
    std::vector<Vertex> parent(n);
    for (Vertex v = 0; v < n; ++v) parent[v] = v;
    std::function<Vertex(Vertex)> find = [&](Vertex v) {
      return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    Vertex comps = n;
    for (auto [u, v] : e) {
      const Vertex a = find(u), b = find(v);
      if (a != b) {
        parent[a] = b;
        --comps;
      }
    }
    if (comps == 1) f(Graph::from_edges(n, e));
  }
}

// Seeded connected G(n,p) samples for property tests.
inline Graph random_connected(Vertex n, double p, locz::Rng& rng) {
  while (true) {
    Graph g = locz::generate_gnp({n, p, rng.next()});
    const auto d = floyd(g);
    if (std::none_of(d[0].begin(), d[0].end(), [](Distance x) { return x == kInf; })) return g;
  }
}

// Exact P(|X - np| >= eps * np) for X ~ Bin(n, p), summed in long double.
inline long double binomial_two_sided_tail(int n, double p, double eps) {
  const long double mean = static_cast<long double>(n) * p;
  long double total = 0;
  for (int x = 0; x <= n; ++x) {
    if (std::fabs(static_cast<long double>(x) - mean) + 1e-12L < eps * mean) continue;
    const long double logc = std::lgamma(n + 1.0L) - std::lgamma(x + 1.0L) - std::lgamma(n - x + 1.0L);
    total += std::exp(logc + x * std::log(static_cast<long double>(p)) +
                      (n - x) * std::log1p(-static_cast<long double>(p)));
  }
  return total;
}

}  // namespace testing_support
