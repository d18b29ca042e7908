#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace locz {

using Vertex = std::uint32_t;

// Hop count, or kUnreachable for a vertex in another component. kUnreachable
// is the largest value of the type, so it orders after every finite distance.
using Distance = std::uint32_t;
inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

using Edge = std::pair<Vertex, Vertex>;

// Immutable simple undirected graph on vertices 0..n-1.
//
// Adjacency is stored in CSR form with each neighbor list sorted. BFS rows are
// computed on first request per source and shared by copies of the graph;
// filling a row is safe under concurrent readers (each row is built once and
// published whole).
class Graph {
 public:
  // Builds from an edge list. Edges may come in any order and orientation;
  // self-loops, duplicates and out-of-range endpoints are rejected.
  static Graph from_edges(Vertex n, std::span<const Edge> edges);

  // Builds from a degree count and an edge emitter that yields each edge
  // {u, v} with u < v in lexicographic order. `emit` is called once with a
  // callback; the callback must be invoked for every edge. Used by the
  // generator to build CSR in a single allocation.
  template <typename Emit>
  static Graph from_lexicographic(Vertex n, std::span<const std::uint64_t> degrees,
                                  Emit&& emit);

  Vertex vertex_count() const { return n_; }
  std::uint64_t edge_count() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(Vertex v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::uint32_t max_degree() const;
  bool has_edge(Vertex u, Vertex v) const;

  // Cached BFS row from `source`.
  const std::vector<Distance>& distances_from(Vertex source) const;
  Distance distance(Vertex u, Vertex v) const { return distances_from(u)[v]; }

  // All edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  // FNV-1a over n and the sorted edge list; computed at construction.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  struct DistanceCache;

  Graph(Vertex n, std::vector<std::uint64_t> offsets, std::vector<Vertex> targets);

  Vertex n_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<Vertex> targets_;
  std::uint64_t fingerprint_ = 0;
  std::shared_ptr<DistanceCache> cache_;
};

// Fresh (uncached) BFS from v. Unreachable vertices get kUnreachable.
std::vector<Distance> bfs_distances(const Graph& g, Vertex v);

// S(v, j): vertices at distance exactly j from v, sorted.
std::vector<Vertex> sphere(const Graph& g, Vertex v, Distance j);

// N(V', j): vertices within distance j of some member of `seeds`, sorted.
std::vector<Vertex> neighborhood(const Graph& g, std::span<const Vertex> seeds, Distance j);

// Largest finite distance over all pairs; kUnreachable iff g is disconnected.
Distance diameter(const Graph& g);

// Eccentricity of v (kUnreachable if some vertex is unreachable from v).
Distance eccentricity(const Graph& g, Vertex v);

bool is_connected(const Graph& g);

// Edge-list text format: "n m" then m lines "u v" with u < v.
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

// Standard families used in tests, examples and the CLI.
Graph path_graph(Vertex n);
Graph cycle_graph(Vertex n);
Graph complete_graph(Vertex n);
Graph star_graph(Vertex leaves);  // center 0, leaves 1..leaves

template <typename Emit>
Graph Graph::from_lexicographic(Vertex n, std::span<const std::uint64_t> degrees,
                                Emit&& emit) {
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + degrees[v];
  std::vector<Vertex> targets(offsets[n]);
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  // Lexicographic emission keeps every row sorted: row u receives its
  // smaller neighbors first (as the v side of earlier pairs), then the
  // larger ones in order.
  emit([&](Vertex u, Vertex v) {
    targets[cursor[u]++] = v;
    targets[cursor[v]++] = u;
  });
  return Graph(n, std::move(offsets), std::move(targets));
}

}  // namespace locz
