#include "locz/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "locz/bitset.hpp"
#include "locz/error.hpp"

namespace locz {

struct Graph::DistanceCache {
  explicit DistanceCache(Vertex n)
      : flags(std::make_unique<std::once_flag[]>(n)),
        rows(std::make_unique<std::vector<Distance>[]>(n)) {}

  std::unique_ptr<std::once_flag[]> flags;
  std::unique_ptr<std::vector<Distance>[]> rows;
};

Graph::Graph(Vertex n, std::vector<std::uint64_t> offsets, std::vector<Vertex> targets)
    : n_(n),
      offsets_(std::move(offsets)),
      targets_(std::move(targets)),
      cache_(std::make_shared<DistanceCache>(n)) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  feed(n_);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) {
        feed(u);
        feed(v);
      }
    }
  }
  fingerprint_ = h;
}

Graph Graph::from_edges(Vertex n, std::span<const Edge> edges) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "graph needs at least one vertex");
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error(ErrorCode::InvalidArgument,
                  "edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range");
    }
    if (u == v) {
      throw Error(ErrorCode::InvalidArgument, "self-loop at " + std::to_string(u));
    }
    sorted.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate edge {" + std::to_string(dup->first) +
                                                "," + std::to_string(dup->second) + "}");
  }
  std::vector<std::uint64_t> degrees(n, 0);
  for (auto [u, v] : sorted) {
    ++degrees[u];
    ++degrees[v];
  }
  return from_lexicographic(n, degrees, [&](auto&& add) {
    for (auto [u, v] : sorted) add(u, v);
  });
}

std::uint32_t Graph::max_degree() const {
  std::uint32_t best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

const std::vector<Distance>& Graph::distances_from(Vertex source) const {
  if (source >= n_) throw Error(ErrorCode::InvalidArgument, "source vertex out of range");
  std::call_once(cache_->flags[source],
                 [&] { cache_->rows[source] = bfs_distances(*this, source); });
  return cache_->rows[source];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Distance> bfs_distances(const Graph& g, Vertex v) {
  const Vertex n = g.vertex_count();
  if (v >= n) throw Error(ErrorCode::InvalidArgument, "BFS source out of range");
  std::vector<Distance> dist(n, kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(n);
  dist[v] = 0;
  queue.push_back(v);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    const Distance next = dist[u] + 1;
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = next;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<Vertex> sphere(const Graph& g, Vertex v, Distance j) {
  const auto& dist = g.distances_from(v);
  std::vector<Vertex> out;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (dist[u] == j) out.push_back(u);
  }
  return out;
}

std::vector<Vertex> neighborhood(const Graph& g, std::span<const Vertex> seeds, Distance j) {
  const Vertex n = g.vertex_count();
  std::vector<Distance> dist(n, kUnreachable);
  std::vector<Vertex> queue;
  for (Vertex s : seeds) {
    if (s >= n) throw Error(ErrorCode::InvalidArgument, "seed vertex out of range");
    if (dist[s] == kUnreachable) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    if (dist[u] >= j) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

Distance eccentricity(const Graph& g, Vertex v) {
  const auto dist = bfs_distances(g, v);
  return *std::max_element(dist.begin(), dist.end());
}

bool is_connected(const Graph& g) {
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](Distance d) { return d == kUnreachable; });
}

namespace {

constexpr Vertex kBitsetDiameterLimit = 16384;

// Level-synchronous BFS on adjacency bitsets from every source. For the
// dense graphs the experiments use this is several times cheaper than list
// BFS: each source costs O(n * n / 64) word operations regardless of m.
Distance bitset_diameter(const Graph& g) {
  const Vertex n = g.vertex_count();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n) * words, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) adj[u * words + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  }
  std::vector<std::uint64_t> visited(words), frontier(words), next(words);
  Distance best = 0;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(visited.begin(), visited.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    visited[s >> 6] |= std::uint64_t{1} << (s & 63);
    frontier[s >> 6] |= std::uint64_t{1} << (s & 63);
    Distance level = 0;
    std::size_t seen = 1;
    while (true) {
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = frontier[w];
        while (bits != 0) {
          const auto u = static_cast<std::size_t>(w * 64 + std::countr_zero(bits));
          bits &= bits - 1;
          const std::uint64_t* row = &adj[u * words];
          for (std::size_t x = 0; x < words; ++x) next[x] |= row[x];
        }
      }
      std::size_t added = 0;
      for (std::size_t x = 0; x < words; ++x) {
        next[x] &= ~visited[x];
        visited[x] |= next[x];
        added += static_cast<std::size_t>(std::popcount(next[x]));
      }
      if (added == 0) break;
      ++level;
      seen += added;
      frontier.swap(next);
    }
    if (seen != n) return kUnreachable;
    best = std::max(best, level);
  }
  return best;
}

}  // namespace

Distance diameter(const Graph& g) {
  const Vertex n = g.vertex_count();
  if (n <= kBitsetDiameterLimit) return bitset_diameter(g);
  Distance best = 0;
  for (Vertex v = 0; v < n; ++v) {
    const Distance e = eccentricity(g, v);
    if (e == kUnreachable) return kUnreachable;
    best = std::max(best, e);
  }
  return best;
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) return;
    }
    throw Error(ErrorCode::Parse, std::string("edge list: missing ") + what);
  };
  next_line("header");
  std::istringstream header(line);
  long long n = 0;
  long long m = 0;
  if (!(header >> n >> m) || n < 1 || m < 0) {
    throw Error(ErrorCode::Parse, "edge list: bad header '" + line + "'");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    next_line("edge line");
    std::istringstream row(line);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) {
      throw Error(ErrorCode::Parse, "edge list: bad edge line '" + line + "'");
    }
    if (u < 0 || v >= n || u >= v) {
      throw Error(ErrorCode::Parse, "edge list: need 0 <= u < v < n, got '" + line + "'");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw Error(ErrorCode::Parse, "edge list: more lines than the header declares");
    }
  }
  try {
    return Graph::from_edges(static_cast<Vertex>(n), edges);
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, std::string("edge list: ") + e.what());
  }
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return read_edge_list(in);
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  write_edge_list(g, out);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

Graph path_graph(Vertex n) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return Graph::from_edges(n, e);
}

Graph cycle_graph(Vertex n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "cycle needs n >= 3");
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  e.emplace_back(0, n - 1);
  return Graph::from_edges(n, e);
}

Graph complete_graph(Vertex n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return Graph::from_edges(n, e);
}

Graph star_graph(Vertex leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

VertexBitset closed_neighborhood(const Graph& g, std::span<const Vertex> set) {
  VertexBitset out(g.vertex_count());
  for (Vertex v : set) {
    out.insert(v);
    for (Vertex w : g.neighbors(v)) out.insert(w);
  }
  return out;
}

}  // namespace locz
