#include "locz/signatures.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "locz/error.hpp"

namespace locz {

ProbeSet::ProbeSet(std::vector<Vertex> vertices, Vertex n) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw Error(ErrorCode::InvalidArgument, "probe set must be nonempty");
  std::vector<Vertex> sorted = vertices_;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= n) {
    throw Error(ErrorCode::InvalidArgument,
                "probe vertex " + std::to_string(sorted.back()) + " out of range");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidArgument, "probe set has a repeated vertex");
  }
}

Signature signature(const Graph& g, const ProbeSet& probes, Vertex v) {
  if (v >= g.vertex_count()) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
  Signature sig;
  sig.reserve(probes.size());
  for (Vertex s : probes.vertices()) sig.push_back(g.distances_from(s)[v]);
  return sig;
}

std::size_t SignaturePartition::total() const {
  std::size_t sum = 0;
  for (const auto& c : classes) sum += c.members.size();
  return sum;
}

bool SignaturePartition::all_singletons() const {
  return std::all_of(classes.begin(), classes.end(),
                     [](const SignatureClass& c) { return c.members.size() == 1; });
}

SignaturePartition partition_by_signature(const Graph& g, const ProbeSet& probes,
                                          std::span<const Vertex> candidates) {
  if (candidates.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot partition an empty candidate set");
  }
  const std::size_t k = probes.size();
  const std::size_t m = candidates.size();
  // Row-major |C| x k signature matrix.
  std::vector<Distance> table(m * k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& row = g.distances_from(probes[i]);
    for (std::size_t c = 0; c < m; ++c) table[c * k + i] = row[candidates[c]];
  }
  auto sig_of = [&](std::size_t c) {
    return std::span<const Distance>(table.data() + c * k, k);
  };
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto sa = sig_of(a);
    auto sb = sig_of(b);
    const auto cmp =
        std::lexicographical_compare_three_way(sa.begin(), sa.end(), sb.begin(), sb.end());
    if (cmp != 0) return cmp < 0;
    return candidates[a] < candidates[b];
  });

  SignaturePartition out{probes, {}};
  for (std::size_t idx = 0; idx < m;) {
    auto sig = sig_of(order[idx]);
    SignatureClass cls{Signature(sig.begin(), sig.end()), {}};
    std::size_t end = idx;
    while (end < m && std::ranges::equal(sig_of(order[end]), sig)) {
      cls.members.push_back(candidates[order[end]]);
      ++end;
    }
    out.classes.push_back(std::move(cls));
    idx = end;
  }
  return out;
}

bool resolves(const Graph& g, const ProbeSet& probes, std::span<const Vertex> candidates) {
  return partition_by_signature(g, probes, candidates).all_singletons();
}

std::vector<Vertex> distinguishing_set(const Graph& g, Vertex x, Vertex y) {
  if (x == y) throw Error(ErrorCode::InvalidPair, "distinguishing set needs x != y");
  const auto& dx = g.distances_from(x);
  const auto& dy = g.distances_from(y);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (dx[v] != dy[v]) out.push_back(v);
  }
  return out;
}

DistinguishingProfile distinguishing_profile(const Graph& g, Vertex x, Vertex y) {
  if (x == y) throw Error(ErrorCode::InvalidPair, "distinguishing profile needs x != y");
  const auto& dx = g.distances_from(x);
  const auto& dy = g.distances_from(y);
  Distance top = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (dx[v] != kUnreachable) top = std::max(top, dx[v]);
    if (dy[v] != kUnreachable) top = std::max(top, dy[v]);
  }
  DistinguishingProfile p;
  p.levels.assign(static_cast<std::size_t>(top) + 1, 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (dx[v] == dy[v]) continue;
    ++p.union_size;
    // v is in S(x,dx)\S(y,dx) and in S(y,dy)\S(x,dy).
    if (dx[v] != kUnreachable) ++p.levels[dx[v]];
    if (dy[v] != kUnreachable) ++p.levels[dy[v]];
    if (dx[v] == kUnreachable || dy[v] == kUnreachable) ++p.one_sided;
  }
  p.level_sum = std::accumulate(p.levels.begin(), p.levels.end(), std::size_t{0});
  return p;
}

}  // namespace locz
