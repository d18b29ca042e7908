#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "locz/bitset.hpp"
#include "locz/graph.hpp"
#include "locz/rng.hpp"
#include "locz/signatures.hpp"

namespace locz {

// Candidate set R^t (or its closed neighborhood) at the moment the cops probe.
struct CandidateSet {
  VertexBitset members;
  std::size_t round = 1;
};

struct RoundRecord {
  ProbeSet probes;
  SignaturePartition partition;   // partition of the candidate set
  std::size_t chosen = 0;         // index into partition.classes
  std::optional<Vertex> robber;   // true position; walk mode only
};

struct GameHistory {
  std::vector<RoundRecord> rounds;
};

// Everything the cops know when choosing the next probe set: past probes,
// past partitions and the classes the robber was seen to pick. `candidates`
// is derived from that record (V in round 1, then N(chosen class, 1)).
struct CopView {
  const Graph& graph;
  std::size_t k;
  const GameHistory& history;
  const VertexBitset& candidates;
};

class CopStrategy {
 public:
  virtual ~CopStrategy() = default;
  virtual std::string name() const = 0;
  // Must return exactly view.k distinct vertices.
  virtual ProbeSet choose(const CopView& view, Rng& rng) = 0;
};

class RobberStrategy {
 public:
  virtual ~RobberStrategy() = default;
  virtual std::string name() const = 0;
  // Index of a class in `partition`.
  virtual std::size_t choose(const Graph& g, const SignaturePartition& partition,
                             const GameHistory& history) = 0;
};

struct WalkView {
  const Graph& graph;
  const ProbeSet& probes;          // sensors for the round being played
  std::optional<Vertex> previous;  // empty in round 1
  const GameHistory& history;
};

// Robber for the original hidden-walk formulation: picks the next vertex of
// the walk. Must stay within N(previous, 1).
class WalkChooser {
 public:
  virtual ~WalkChooser() = default;
  virtual std::string name() const = 0;
  virtual Vertex choose(const WalkView& view) = 0;
};

enum class Outcome { CopWin, RobberSurvived };

const char* to_string(Outcome outcome);

struct Transcript {
  Vertex n = 0;
  std::uint64_t edge_hash = 0;
  std::size_t k = 0;
  GameHistory history;
  Outcome outcome = Outcome::RobberSurvived;
  std::size_t rounds_played = 0;  // capture round on CopWin
  std::uint64_t seed = 0;
};

struct PlayOptions {
  std::optional<std::size_t> max_rounds;  // default n^2
  std::uint64_t seed = 0;
};

struct StepResult {
  SignaturePartition partition;
  std::size_t chosen = 0;
  bool cop_win = false;
  VertexBitset next;  // N(chosen class, 1); empty on cop_win
};

// One round of the class game on candidate set `candidates`.
StepResult step(const Graph& g, const VertexBitset& candidates, const ProbeSet& probes,
                RobberStrategy& robber, const GameHistory& history);

// Class (perfect-information) game. Throws DisconnectedGraph or InvalidK.
Transcript play(const Graph& g, std::size_t k, CopStrategy& cop, RobberStrategy& robber,
                const PlayOptions& options = {});

// Hidden-walk game: tracks the candidate set implied by the info trail and
// checks that the true position never leaves it. Throws IllegalRobberMove
// if the walk leaves the closed neighborhood.
Transcript simulate_walk(const Graph& g, std::size_t k, CopStrategy& cop, WalkChooser& walker,
                         const PlayOptions& options = {});

// A walk v_1..v_T with v_t in the class chosen in round t, built backwards
// from the last class. Exists for every class-game history.
std::vector<Vertex> consistent_walk(const Graph& g, const GameHistory& history);

// Walk chooser replaying a fixed vertex sequence; stays put once exhausted.
class SequenceWalk final : public WalkChooser {
 public:
  explicit SequenceWalk(std::vector<Vertex> walk) : walk_(std::move(walk)) {}
  std::string name() const override { return "sequence-walk"; }
  Vertex choose(const WalkView& view) override;

 private:
  std::vector<Vertex> walk_;
  std::size_t next_ = 0;
};

// Uniform start, then a uniform step in N(v, 1) (staying put included).
class RandomWalk final : public WalkChooser {
 public:
  explicit RandomWalk(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random-walk"; }
  Vertex choose(const WalkView& view) override;

 private:
  Rng rng_;
};

// JSON transcript:
// {graph:{n,edge_hash}, k, rounds:[{probe:[..], classes:[{sig:[..],size}], chosen}],
//  outcome:{result, round}, seeds:{game}}
// Unreachable signature entries are written as null.
std::string transcript_to_json(const Transcript& t);

// Parses a transcript and replays it on `g`, rebuilding every partition.
// Throws Parse if the JSON is malformed or if any recorded partition differs
// from the replayed one.
Transcript transcript_from_json(std::string_view json, const Graph& g);

}  // namespace locz
