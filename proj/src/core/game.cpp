#include "locz/game.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "locz/error.hpp"

namespace locz {

using ordered_json = nlohmann::ordered_json;

const char* to_string(Outcome outcome) {
  return outcome == Outcome::CopWin ? "CopWin" : "RobberSurvived";
}

namespace {

void require_playable(const Graph& g, std::size_t k) {
  if (!is_connected(g)) {
    throw Error(ErrorCode::DisconnectedGraph, "the localization game needs a connected graph");
  }
  if (k < 1 || k > g.vertex_count()) {
    throw Error(ErrorCode::InvalidK, "k must satisfy 1 <= k <= n, got k=" + std::to_string(k));
  }
}

std::size_t round_cap(const Graph& g, const PlayOptions& options) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const std::size_t cap = options.max_rounds.value_or(n * n);
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "maxRounds must be >= 1");
  return cap;
}

ProbeSet ask_cop(CopStrategy& cop, const CopView& view, Rng& rng) {
  ProbeSet probes = cop.choose(view, rng);
  if (probes.size() != view.k) {
    throw Error(ErrorCode::InvalidK, "cop strategy '" + cop.name() + "' returned " +
                                         std::to_string(probes.size()) + " probes, expected " +
                                         std::to_string(view.k));
  }
  for (Vertex v : probes.vertices()) {
    if (v >= view.graph.vertex_count()) {
      throw Error(ErrorCode::InvalidArgument, "cop probe out of range");
    }
  }
  return probes;
}

std::size_t class_of(const SignaturePartition& partition, const Signature& sig) {
  auto it = std::lower_bound(
      partition.classes.begin(), partition.classes.end(), sig,
      [](const SignatureClass& c, const Signature& s) { return c.signature < s; });
  if (it == partition.classes.end() || it->signature != sig) {
    throw Error(ErrorCode::Internal, "signature not present in partition");
  }
  return static_cast<std::size_t>(it - partition.classes.begin());
}

Transcript start_transcript(const Graph& g, std::size_t k, const PlayOptions& options) {
  Transcript t;
  t.n = g.vertex_count();
  t.edge_hash = g.fingerprint();
  t.k = k;
  t.seed = options.seed;
  return t;
}

}  // namespace

StepResult step(const Graph& g, const VertexBitset& candidates, const ProbeSet& probes,
                RobberStrategy& robber, const GameHistory& history) {
  const auto members = candidates.to_vector();
  StepResult out;
  out.partition = partition_by_signature(g, probes, members);
  out.chosen = robber.choose(g, out.partition, history);
  if (out.chosen >= out.partition.classes.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "robber strategy '" + robber.name() + "' chose a nonexistent class");
  }
  const auto& cls = out.partition.classes[out.chosen].members;
  out.cop_win = cls.size() == 1;
  if (!out.cop_win) out.next = closed_neighborhood(g, cls);
  return out;
}

Transcript play(const Graph& g, std::size_t k, CopStrategy& cop, RobberStrategy& robber,
                const PlayOptions& options) {
  require_playable(g, k);
  const std::size_t cap = round_cap(g, options);
  Rng rng(options.seed);
  Transcript t = start_transcript(g, k, options);
  VertexBitset candidates = VertexBitset::full(g.vertex_count());
  for (std::size_t round = 1; round <= cap; ++round) {
    ProbeSet probes = ask_cop(cop, CopView{g, k, t.history, candidates}, rng);
    StepResult res = step(g, candidates, probes, robber, t.history);
    t.history.rounds.push_back(
        RoundRecord{std::move(probes), std::move(res.partition), res.chosen, std::nullopt});
    if (res.cop_win) {
      t.outcome = Outcome::CopWin;
      t.rounds_played = round;
      return t;
    }
    candidates = std::move(res.next);
  }
  t.outcome = Outcome::RobberSurvived;
  t.rounds_played = cap;
  return t;
}

Transcript simulate_walk(const Graph& g, std::size_t k, CopStrategy& cop, WalkChooser& walker,
                         const PlayOptions& options) {
  require_playable(g, k);
  const std::size_t cap = round_cap(g, options);
  const Vertex n = g.vertex_count();
  Rng rng(options.seed);
  Transcript t = start_transcript(g, k, options);
  VertexBitset candidates = VertexBitset::full(n);
  std::optional<Vertex> previous;
  for (std::size_t round = 1; round <= cap; ++round) {
    ProbeSet probes = ask_cop(cop, CopView{g, k, t.history, candidates}, rng);
    const Vertex v = walker.choose(WalkView{g, probes, previous, t.history});
    if (v >= n) throw Error(ErrorCode::IllegalRobberMove, "walk left the vertex set");
    if (previous && v != *previous && !g.has_edge(*previous, v)) {
      throw Error(ErrorCode::IllegalRobberMove,
                  "walk moved from " + std::to_string(*previous) + " to non-neighbor " +
                      std::to_string(v) + " in round " + std::to_string(round));
    }
    if (!candidates.contains(v)) {
      throw Error(ErrorCode::Internal, "robber position escaped the candidate set");
    }
    SignaturePartition partition = partition_by_signature(g, probes, candidates.to_vector());
    const std::size_t chosen = class_of(partition, signature(g, probes, v));
    const auto& cls = partition.classes[chosen].members;
    const bool win = cls.size() == 1;
    VertexBitset next = win ? VertexBitset() : closed_neighborhood(g, cls);
    t.history.rounds.push_back(RoundRecord{std::move(probes), std::move(partition), chosen, v});
    if (win) {
      t.outcome = Outcome::CopWin;
      t.rounds_played = round;
      return t;
    }
    candidates = std::move(next);
    previous = v;
  }
  t.outcome = Outcome::RobberSurvived;
  t.rounds_played = cap;
  return t;
}

std::vector<Vertex> consistent_walk(const Graph& g, const GameHistory& history) {
  const auto& rounds = history.rounds;
  std::vector<Vertex> walk(rounds.size());
  if (rounds.empty()) return walk;
  walk.back() = rounds.back().partition.classes[rounds.back().chosen].members.front();
  for (std::size_t t = rounds.size() - 1; t-- > 0;) {
    const auto& cls = rounds[t].partition.classes[rounds[t].chosen].members;
    const Vertex after = walk[t + 1];
    auto it = std::find_if(cls.begin(), cls.end(),
                           [&](Vertex u) { return u == after || g.has_edge(u, after); });
    if (it == cls.end()) {
      throw Error(ErrorCode::Internal, "history has no consistent walk at round " +
                                           std::to_string(t + 1));
    }
    walk[t] = *it;
  }
  return walk;
}

Vertex SequenceWalk::choose(const WalkView&) {
  if (walk_.empty()) throw Error(ErrorCode::InvalidArgument, "empty walk sequence");
  const Vertex v = walk_[std::min(next_, walk_.size() - 1)];
  ++next_;
  return v;
}

Vertex RandomWalk::choose(const WalkView& view) {
  if (!view.previous) return static_cast<Vertex>(rng_.below(view.graph.vertex_count()));
  const auto nbrs = view.graph.neighbors(*view.previous);
  const auto pick = rng_.below(nbrs.size() + 1);
  return pick == 0 ? *view.previous : nbrs[pick - 1];
}

namespace {

std::string hex64(std::uint64_t x) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

ordered_json signature_json(const Signature& sig) {
  ordered_json out = ordered_json::array();
  for (Distance d : sig) {
    if (d == kUnreachable) {
      out.push_back(nullptr);
    } else {
      out.push_back(d);
    }
  }
  return out;
}

Signature signature_from_json(const ordered_json& j) {
  Signature sig;
  for (const auto& x : j) sig.push_back(x.is_null() ? kUnreachable : x.get<Distance>());
  return sig;
}

}  // namespace

std::string transcript_to_json(const Transcript& t) {
  ordered_json doc;
  doc["graph"] = {{"n", t.n}, {"edge_hash", hex64(t.edge_hash)}};
  doc["k"] = t.k;
  ordered_json rounds = ordered_json::array();
  for (const auto& r : t.history.rounds) {
    ordered_json classes = ordered_json::array();
    for (const auto& c : r.partition.classes) {
      classes.push_back({{"sig", signature_json(c.signature)}, {"size", c.members.size()}});
    }
    ordered_json probe(std::vector<Vertex>(r.probes.vertices().begin(), r.probes.vertices().end()));
    rounds.push_back({{"probe", std::move(probe)}, {"classes", std::move(classes)}, {"chosen", r.chosen}});
  }
  doc["rounds"] = std::move(rounds);
  doc["outcome"] = {{"result", to_string(t.outcome)}, {"round", t.rounds_played}};
  doc["seeds"] = {{"game", t.seed}};
  return doc.dump();
}

Transcript transcript_from_json(std::string_view json, const Graph& g) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Parse, std::string("transcript: ") + e.what());
  }
  try {
    Transcript t;
    t.n = doc.at("graph").at("n").get<Vertex>();
    t.edge_hash = std::stoull(doc.at("graph").at("edge_hash").get<std::string>(), nullptr, 16);
    if (t.n != g.vertex_count() || t.edge_hash != g.fingerprint()) {
      throw Error(ErrorCode::Parse, "transcript was recorded on a different graph");
    }
    t.k = doc.at("k").get<std::size_t>();
    t.seed = doc.at("seeds").at("game").get<std::uint64_t>();
    const auto result = doc.at("outcome").at("result").get<std::string>();
    if (result == "CopWin") {
      t.outcome = Outcome::CopWin;
    } else if (result == "RobberSurvived") {
      t.outcome = Outcome::RobberSurvived;
    } else {
      throw Error(ErrorCode::Parse, "transcript: unknown outcome '" + result + "'");
    }
    t.rounds_played = doc.at("outcome").at("round").get<std::size_t>();

    VertexBitset candidates = VertexBitset::full(g.vertex_count());
    const auto& rounds = doc.at("rounds");
    for (std::size_t i = 0; i < rounds.size(); ++i) {
      const auto& r = rounds[i];
      if (candidates.empty()) throw Error(ErrorCode::Parse, "transcript continues after capture");
      ProbeSet probes(r.at("probe").get<std::vector<Vertex>>(), g.vertex_count());
      SignaturePartition partition = partition_by_signature(g, probes, candidates.to_vector());
      const auto& classes = r.at("classes");
      bool same = classes.size() == partition.classes.size();
      for (std::size_t c = 0; same && c < classes.size(); ++c) {
        same = signature_from_json(classes[c].at("sig")) == partition.classes[c].signature &&
               classes[c].at("size").get<std::size_t>() == partition.classes[c].members.size();
      }
      if (!same) {
        throw Error(ErrorCode::Parse,
                    "transcript round " + std::to_string(i + 1) + " does not replay on this graph");
      }
      const auto chosen = r.at("chosen").get<std::size_t>();
      if (chosen >= partition.classes.size()) {
        throw Error(ErrorCode::Parse, "transcript: chosen class out of range");
      }
      const auto& cls = partition.classes[chosen].members;
      candidates = cls.size() == 1 ? VertexBitset(g.vertex_count()) : closed_neighborhood(g, cls);
      t.history.rounds.push_back(RoundRecord{std::move(probes), std::move(partition), chosen, std::nullopt});
    }
    const bool captured = !t.history.rounds.empty() && candidates.empty();
    if (captured != (t.outcome == Outcome::CopWin)) {
      throw Error(ErrorCode::Parse, "transcript outcome disagrees with its rounds");
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("transcript: ") + e.what());
  }
}

}  // namespace locz
