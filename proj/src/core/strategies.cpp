#include "locz/strategies.hpp"

#include <algorithm>
#include <numeric>

#include "locz/error.hpp"

namespace locz {

namespace {

class RandomCop final : public CopStrategy {
 public:
  explicit RandomCop(const RandomCopConfig& config) : config_(config) {
    if (config.k < 1) throw Error(ErrorCode::InvalidK, "random cop needs k >= 1");
    if (config.seed) own_.emplace(*config.seed);
  }

  std::string name() const override { return "random-cop"; }

  ProbeSet choose(const CopView& view, Rng& game_rng) override {
    Rng& rng = own_ ? *own_ : game_rng;
    const Vertex n = view.graph.vertex_count();
    if (config_.k > n) throw Error(ErrorCode::InvalidK, "random cop: k exceeds n");
    if (pool_.size() != n) {
      pool_.resize(n);
    }
    std::iota(pool_.begin(), pool_.end(), Vertex{0});
    std::vector<Vertex> picked(config_.k);
    for (std::size_t i = 0; i < config_.k; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(pool_[i], pool_[j]);
      picked[i] = pool_[i];
    }
    return ProbeSet(std::move(picked), n);
  }

 private:
  RandomCopConfig config_;
  std::optional<Rng> own_;
  std::vector<Vertex> pool_;
};

class FixedCop final : public CopStrategy {
 public:
  explicit FixedCop(std::vector<ProbeSet> sequence) : sequence_(std::move(sequence)) {
    if (sequence_.empty()) throw Error(ErrorCode::InvalidArgument, "fixed cop needs a probe set");
    for (const auto& s : sequence_) {
      if (s.size() != sequence_.front().size()) {
        throw Error(ErrorCode::InvalidK, "fixed cop probe sets differ in size");
      }
    }
  }

  std::string name() const override { return "fixed-cop"; }

  ProbeSet choose(const CopView& view, Rng&) override {
    const std::size_t round = view.history.rounds.size();
    const ProbeSet& s = sequence_[std::min(round, sequence_.size() - 1)];
    if (s.size() != view.k) {
      throw Error(ErrorCode::InvalidK, "fixed cop probe sets have size " +
                                           std::to_string(s.size()) + ", game has k=" +
                                           std::to_string(view.k));
    }
    return s;
  }

 private:
  std::vector<ProbeSet> sequence_;
};

Distance min_coordinate(const Signature& sig) {
  return *std::min_element(sig.begin(), sig.end());
}

class DiametricRobber final : public RobberStrategy {
 public:
  explicit DiametricRobber(const DiametricRobberConfig& config) : config_(config) {
    if (config.target && *config.target < 1) {
      throw Error(ErrorCode::InvalidArgument, "diametric robber target must be >= 1");
    }
  }

  std::string name() const override { return "diametric-robber"; }

  std::size_t choose(const Graph& g, const SignaturePartition& partition,
                     const GameHistory&) override {
    const Distance target = target_for(g);
    const auto& classes = partition.classes;
    const auto hit = constant_class(partition, target);
    if (hit && classes[*hit].members.size() > 1) return *hit;

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].members.size() < 2) continue;
      if (!best) {
        best = i;
        continue;
      }
      const Distance a = min_coordinate(classes[i].signature);
      const Distance b = min_coordinate(classes[*best].signature);
      if (a > b || (a == b && classes[i].members.size() > classes[*best].members.size())) {
        best = i;
      }
    }
    if (best) return *best;
    return hit.value_or(0);
  }

 private:
  Distance target_for(const Graph& g) {
    if (config_.target) return *config_.target;
    const auto fp = g.fingerprint();
    if (!cached_diameter_ || cached_fingerprint_ != fp) {
      cached_diameter_ = diameter(g);
      cached_fingerprint_ = fp;
    }
    return *cached_diameter_;
  }

  DiametricRobberConfig config_;
  std::optional<Distance> cached_diameter_;
  std::uint64_t cached_fingerprint_ = 0;
};

class GreedyRobber final : public RobberStrategy {
 public:
  std::string name() const override { return "greedy-robber"; }

  std::size_t choose(const Graph& g, const SignaturePartition& partition,
                     const GameHistory&) override {
    const auto& classes = partition.classes;
    if (stamp_.size() != g.vertex_count()) stamp_.assign(g.vertex_count(), 0);
    std::size_t best = 0;
    std::size_t best_reach = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const std::size_t reach = reach_of(g, classes[i].members);
      // Classes are visited in signature order, so strict comparisons keep
      // the smaller signature on a full tie.
      if (i == 0 || reach > best_reach ||
          (reach == best_reach && classes[i].members.size() > classes[best].members.size())) {
        best = i;
        best_reach = reach;
      }
    }
    return best;
  }

 private:
  std::size_t reach_of(const Graph& g, const std::vector<Vertex>& members) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    std::size_t count = 0;
    auto mark = [&](Vertex v) {
      if (stamp_[v] != epoch_) {
        stamp_[v] = epoch_;
        ++count;
      }
    };
    for (Vertex v : members) {
      mark(v);
      for (Vertex w : g.neighbors(v)) mark(w);
    }
    return count;
  }

  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

class RandomRobber final : public RobberStrategy {
 public:
  explicit RandomRobber(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random-robber"; }
  std::size_t choose(const Graph&, const SignaturePartition& partition,
                     const GameHistory&) override {
    return static_cast<std::size_t>(rng_.below(partition.classes.size()));
  }

 private:
  Rng rng_;
};

}  // namespace

std::optional<std::size_t> constant_class(const SignaturePartition& partition, Distance target) {
  for (std::size_t i = 0; i < partition.classes.size(); ++i) {
    const auto& sig = partition.classes[i].signature;
    if (std::all_of(sig.begin(), sig.end(), [&](Distance d) { return d == target; })) return i;
  }
  return std::nullopt;
}

std::unique_ptr<CopStrategy> random_cop(const RandomCopConfig& config) {
  return std::make_unique<RandomCop>(config);
}

std::unique_ptr<CopStrategy> fixed_cop(std::vector<ProbeSet> sequence) {
  return std::make_unique<FixedCop>(std::move(sequence));
}

std::unique_ptr<RobberStrategy> diametric_robber(const DiametricRobberConfig& config) {
  return std::make_unique<DiametricRobber>(config);
}

std::unique_ptr<RobberStrategy> greedy_robber() { return std::make_unique<GreedyRobber>(); }

std::unique_ptr<RobberStrategy> random_robber(std::uint64_t seed) {
  return std::make_unique<RandomRobber>(seed);
}

}  // namespace locz
