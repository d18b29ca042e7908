#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "locz/graph.hpp"

namespace locz {

// Fixed-universe vertex set over 0..n-1, one bit per vertex.
class VertexBitset {
 public:
  VertexBitset() = default;
  explicit VertexBitset(Vertex universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VertexBitset full(Vertex universe) {
    VertexBitset s(universe);
    for (Vertex v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

  static VertexBitset of(Vertex universe, std::span<const Vertex> members) {
    VertexBitset s(universe);
    for (Vertex v : members) s.insert(v);
    return s;
  }

  Vertex universe() const { return universe_; }

  void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  bool contains(Vertex v) const {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U) != 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        f(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  // Members in increasing order.
  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  bool is_subset_of(const VertexBitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const VertexBitset&, const VertexBitset&) = default;

 private:
  Vertex universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Closed neighborhood N(R, 1) of a vertex set.
VertexBitset closed_neighborhood(const Graph& g, std::span<const Vertex> set);

}  // namespace locz
