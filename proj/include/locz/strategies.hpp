#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "locz/game.hpp"

namespace locz {

struct RandomCopConfig {
  std::size_t k = 1;
  // When set the cop draws from its own stream seeded here; otherwise it
  // draws from the game's stream (PlayOptions::seed).
  std::optional<std::uint64_t> seed;
};

// Each round an independent uniform k-subset of V, drawn one vertex at a
// time without replacement. Ignores the history entirely.
std::unique_ptr<CopStrategy> random_cop(const RandomCopConfig& config);

// Plays the given probe sets in order, then repeats the last one. All sets
// must share one size (InvalidK otherwise).
std::unique_ptr<CopStrategy> fixed_cop(std::vector<ProbeSet> sequence);

struct DiametricRobberConfig {
  // Distance the robber tries to keep from every sensor. Defaults to the
  // exact diameter of the graph being played.
  std::optional<Distance> target;
};

// Stays in the class whose signature is (target, ..., target).
//
// When that class is missing or a singleton, the fallback is, in order:
//  1. the non-singleton class with constant signature equal to target;
//  2. the non-singleton class with the largest minimum coordinate, ties by
//     larger size, then by smaller signature;
//  3. the target class if present, else the first class (every class is a
//     singleton, so the cops win whatever happens).
std::unique_ptr<RobberStrategy> diametric_robber(const DiametricRobberConfig& config = {});

// Picks the class with the largest closed neighborhood; ties go to the larger
// class, then to the smaller signature.
std::unique_ptr<RobberStrategy> greedy_robber();

// Uniformly random class. Baseline for tests and sweeps.
std::unique_ptr<RobberStrategy> random_robber(std::uint64_t seed);

// Index of the class with signature (target, ..., target), if any.
std::optional<std::size_t> constant_class(const SignaturePartition& partition, Distance target);

}  // namespace locz
