#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "locz/error.hpp"
#include "locz/gnp.hpp"
#include "locz/graph.hpp"
#include "locz/rng.hpp"
#include "locz/signatures.hpp"
#include "support.hpp"

using namespace locz;
using testing_support::floyd;

namespace {

std::vector<Vertex> all_vertices(Vertex n) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<std::vector<Vertex>> member_lists(const SignaturePartition& p) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& c : p.classes) out.push_back(c.members);
  return out;
}

ProbeSet random_probes(Rng& rng, Vertex n, std::size_t k) {
  std::vector<Vertex> pool = all_vertices(n);
  std::vector<Vertex> pick;
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(rng.below(pool.size()));
    pick.push_back(pool[j]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return ProbeSet(pick, n);
}

}  // namespace

TEST(Signature, Examples) {
  EXPECT_EQ(signature(cycle_graph(4), ProbeSet({0}, 4), 2), (Signature{2}));
  EXPECT_EQ(signature(complete_graph(3), ProbeSet({0, 1}, 3), 2), (Signature{1, 1}));
  const std::vector<Edge> e{{0, 1}, {2, 3}};
  EXPECT_EQ(signature(Graph::from_edges(4, e), ProbeSet({0}, 4), 3), (Signature{kUnreachable}));
}

TEST(ProbeSet, RejectsInvalid) {
  EXPECT_THROW(ProbeSet({}, 3), Error);
  EXPECT_THROW(ProbeSet({0, 0}, 3), Error);
  EXPECT_THROW(ProbeSet({3}, 3), Error);
}

TEST(Partition, Examples) {
  const auto c4 = partition_by_signature(cycle_graph(4), ProbeSet({0}, 4), all_vertices(4));
  EXPECT_EQ(member_lists(c4), (std::vector<std::vector<Vertex>>{{0}, {1, 3}, {2}}));
  EXPECT_EQ(c4.classes[1].signature, (Signature{1}));

  const auto p4 = partition_by_signature(path_graph(4), ProbeSet({0}, 4), all_vertices(4));
  EXPECT_TRUE(p4.all_singletons());
  EXPECT_EQ(p4.classes.size(), 4u);

  const auto k5 = partition_by_signature(complete_graph(5), ProbeSet({0, 1}, 5), all_vertices(5));
  EXPECT_EQ(member_lists(k5), (std::vector<std::vector<Vertex>>{{0}, {1}, {2, 3, 4}}));
}

TEST(Partition, SoundnessAndOrder) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = generate_gnp({40, 0.08, rng.next()});
    const ProbeSet s = random_probes(rng, 40, 1 + rng.below(4));
    std::vector<Vertex> cand;
    for (Vertex v = 0; v < 40; ++v) {
      if (rng.uniform() < 0.6) cand.push_back(v);
    }
    if (cand.empty()) cand.push_back(0);
    const auto part = partition_by_signature(g, s, cand);
    EXPECT_EQ(part.total(), cand.size());
    std::set<Vertex> seen;
    for (std::size_t i = 0; i < part.classes.size(); ++i) {
      const auto& cls = part.classes[i];
      ASSERT_FALSE(cls.members.empty());
      if (i > 0) {
        EXPECT_LT(part.classes[i - 1].signature, cls.signature);
      }
      for (Vertex v : cls.members) {
        EXPECT_TRUE(seen.insert(v).second);
        EXPECT_EQ(signature(g, s, v), cls.signature);
      }
    }
    EXPECT_EQ(seen, std::set<Vertex>(cand.begin(), cand.end()));
  }
}

TEST(Partition, SupersetRefines) {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = generate_gnp({35, 0.1, rng.next()});
    const ProbeSet big = random_probes(rng, 35, 4);
    const auto bv = big.vertices();
    const ProbeSet small(std::vector<Vertex>(bv.begin(), bv.begin() + 2), 35);
    const auto cand = all_vertices(35);
    const auto coarse = partition_by_signature(g, small, cand);
    const auto fine = partition_by_signature(g, big, cand);
    for (const auto& f : fine.classes) {
      const bool contained = std::any_of(coarse.classes.begin(), coarse.classes.end(), [&](const auto& c) {
        return std::includes(c.members.begin(), c.members.end(), f.members.begin(), f.members.end());
      });
      EXPECT_TRUE(contained);
    }
  }
}

TEST(Resolves, MatchesPairwiseDistinctSignatures) {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = generate_gnp({12, 0.3, rng.next()});
    const ProbeSet s = random_probes(rng, 12, 1 + rng.below(3));
    const auto cand = all_vertices(12);
    std::set<Signature> sigs;
    for (Vertex v : cand) sigs.insert(signature(g, s, v));
    EXPECT_EQ(resolves(g, s, cand), sigs.size() == cand.size());
    EXPECT_EQ(partition_by_signature(g, s, cand).all_singletons(), sigs.size() == cand.size());
  }
}

TEST(DistinguishingSet, Examples) {
  EXPECT_EQ(distinguishing_set(complete_graph(3), 0, 1), (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(distinguishing_set(path_graph(3), 0, 2), (std::vector<Vertex>{0, 2}));
  EXPECT_THROW(distinguishing_set(path_graph(3), 1, 1), Error);
  try {
    distinguishing_set(path_graph(3), 1, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPair);
  }
}

TEST(DistinguishingSet, MatchesPairwiseScanOnGnp) {
  const Graph g = generate_gnp({200, 0.05, 11});
  const auto d = floyd(g);
  std::vector<Vertex> expect;
  for (Vertex v = 0; v < 200; ++v) {
    if (d[v][0] != d[v][1]) expect.push_back(v);
  }
  EXPECT_EQ(distinguishing_set(g, 0, 1), expect);
}

TEST(DistinguishingSet, MembershipLawSymmetryAndEndpoints) {
  Rng rng(8);
  for (Vertex n : {5u, 17u, 40u}) {
    const Graph g = generate_gnp({n, 0.12, rng.next()});
    const auto d = floyd(g);
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = x + 1; y < n; ++y) {
        const auto dxy = distinguishing_set(g, x, y);
        EXPECT_EQ(dxy, distinguishing_set(g, y, x));
        EXPECT_TRUE(std::binary_search(dxy.begin(), dxy.end(), x));
        EXPECT_TRUE(std::binary_search(dxy.begin(), dxy.end(), y));
        for (Vertex v = 0; v < n; ++v) {
          const bool differs = signature(g, ProbeSet({v}, n), x) != signature(g, ProbeSet({v}, n), y);
          EXPECT_EQ(std::binary_search(dxy.begin(), dxy.end(), v), differs);
          EXPECT_EQ(differs, d[v][x] != d[v][y]);
        }
      }
    }
  }
}

TEST(DistinguishingProfile, Examples) {
  const auto k3 = distinguishing_profile(complete_graph(3), 0, 1);
  EXPECT_EQ(k3.levels, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(k3.union_size, 2u);
  const auto p3 = distinguishing_profile(path_graph(3), 0, 2);
  EXPECT_EQ(p3.levels, (std::vector<std::size_t>{2, 0, 2}));
  EXPECT_EQ(p3.level_sum, 4u);
}

TEST(DistinguishingProfile, PerLevelOracleOnGnp) {
  const Graph g = generate_gnp({500, 0.02, 3});
  const auto d = floyd(g);
  Rng rng(3);
  const auto x = static_cast<Vertex>(rng.below(500));
  auto y = static_cast<Vertex>(rng.below(500));
  if (y == x) y = (x + 1) % 500;
  const auto prof = distinguishing_profile(g, x, y);
  std::size_t sum = 0;
  for (std::size_t j = 0; j < prof.levels.size(); ++j) {
    std::size_t s = 0;
    for (Vertex v = 0; v < 500; ++v) {
      const bool in_x = d[x][v] == j;
      const bool in_y = d[y][v] == j;
      if (in_x != in_y) ++s;
    }
    EXPECT_EQ(prof.levels[j], s) << "level " << j;
    sum += s;
  }
  EXPECT_EQ(prof.level_sum, sum);
  std::size_t union_size = 0;
  for (Vertex v = 0; v < 500; ++v) union_size += d[x][v] != d[y][v] ? 1 : 0;
  EXPECT_EQ(prof.union_size, union_size);
}

TEST(DistinguishingProfile, LevelSumIdentity) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    // Sparse enough that many samples are disconnected.
    const Graph g = generate_gnp({50, 0.03, rng.next()});
    const auto d = floyd(g);
    const auto x = static_cast<Vertex>(rng.below(50));
    const auto y = static_cast<Vertex>((x + 1 + rng.below(49)) % 50);
    const auto prof = distinguishing_profile(g, x, y);
    std::size_t one_sided = 0;
    for (Vertex v = 0; v < 50; ++v) {
      if ((d[x][v] == testing_support::kInf) != (d[y][v] == testing_support::kInf)) ++one_sided;
    }
    EXPECT_EQ(prof.one_sided, one_sided);
    EXPECT_EQ(prof.level_sum, 2 * prof.union_size - prof.one_sided);
    if (is_connected(g)) {
      EXPECT_EQ(prof.level_sum, 2 * prof.union_size);
    }
  }
}
