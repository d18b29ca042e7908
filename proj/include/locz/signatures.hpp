#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "locz/graph.hpp"

namespace locz {

// Ordered list of distinct sensor vertices. Order matters: coordinate i of a
// signature is the distance from the i-th probe.
class ProbeSet {
 public:
  ProbeSet() = default;
  // Throws InvalidArgument if empty, if a vertex repeats, or if a vertex is
  // not below `n`.
  ProbeSet(std::vector<Vertex> vertices, Vertex n);

  std::span<const Vertex> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  friend bool operator==(const ProbeSet&, const ProbeSet&) = default;

 private:
  std::vector<Vertex> vertices_;
};

// Distances from each probe, aligned with the ProbeSet. std::vector's
// lexicographic ordering with kUnreachable as the top value is the class
// order everywhere.
using Signature = std::vector<Distance>;

Signature signature(const Graph& g, const ProbeSet& probes, Vertex v);

struct SignatureClass {
  Signature signature;
  std::vector<Vertex> members;  // sorted, nonempty
};

struct SignaturePartition {
  ProbeSet probes;
  std::vector<SignatureClass> classes;  // sorted by signature

  std::size_t total() const;
  bool all_singletons() const;
};

// Groups `candidates` by S-signature. Candidates must be nonempty and
// duplicate-free.
SignaturePartition partition_by_signature(const Graph& g, const ProbeSet& probes,
                                          std::span<const Vertex> candidates);

// True iff every candidate has a distinct signature.
bool resolves(const Graph& g, const ProbeSet& probes, std::span<const Vertex> candidates);

// D(x, y) = { v : d(v, x) != d(v, y) }, sorted. Throws InvalidPair if x == y.
std::vector<Vertex> distinguishing_set(const Graph& g, Vertex x, Vertex y);

// Per-level sizes s_j = |S(x,j) xor S(y,j)| for j = 0..max(ecc(x), ecc(y))
// (finite part only; all later levels are empty).
//
// A vertex v with d(x,v) = a != b = d(y,v) sits in S(x,a)\S(y,a) and in
// S(y,b)\S(x,b), so it is counted at two levels when both distances are
// finite and at one level when one of them is unreachable. Hence
//   level_sum == 2 * union_size - one_sided
// where one_sided counts members of D(x,y) reachable from only one of x, y.
// On a connected graph level_sum is exactly twice |D(x,y)|.
struct DistinguishingProfile {
  std::vector<std::size_t> levels;
  std::size_t level_sum = 0;
  std::size_t union_size = 0;
  std::size_t one_sided = 0;
};

DistinguishingProfile distinguishing_profile(const Graph& g, Vertex x, Vertex y);

}  // namespace locz
