// locz: command-line front end over the C interface.
//
// Exit codes: 0 success, 2 solver budget exceeded, 3 invalid config or
// input, 1 anything else.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "locz/locz.h"

namespace {

using nlohmann::json;

struct Failure {
  locz_status status;
};

int exit_code(locz_status s) {
  switch (s) {
    case LOCZ_OK: return 0;
    case LOCZ_ERR_BUDGET_EXCEEDED: return 2;
    case LOCZ_ERR_INVALID_ARGUMENT:
    case LOCZ_ERR_DISCONNECTED_GRAPH:
    case LOCZ_ERR_INVALID_K:
    case LOCZ_ERR_INVALID_PAIR:
    case LOCZ_ERR_CASE_MISMATCH:
    case LOCZ_ERR_EPS_OUT_OF_RANGE:
    case LOCZ_ERR_DEGENERATE_REGIME:
    case LOCZ_ERR_PARSE: return 3;
    default: return 1;
  }
}

void check(locz_status s) {
  if (s != LOCZ_OK) {
    std::cerr << "locz: " << locz_status_name(s) << ": " << locz_last_error() << "\n";
    throw Failure{s};
  }
}

void invalid(const std::string& msg) {
  std::cerr << "locz: " << msg << "\n";
  throw Failure{LOCZ_ERR_INVALID_ARGUMENT};
}

// Takes ownership of a char* from the library.
std::string take(char* s) {
  std::string out(s);
  locz_string_free(s);
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  f << text;
  if (!f) {
    std::cerr << "locz: cannot write " << out_path << "\n";
    throw Failure{LOCZ_ERR_IO};
  }
}

std::vector<unsigned> parse_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      invalid("bad vertex list '" + text + "'");
    }
  }
  return out;
}

struct GraphSource {
  std::string file;
  std::string family;
  unsigned size = 0;
  unsigned n = 0;
  std::optional<double> p;
  std::optional<double> d;
  std::uint64_t seed = 0;

  void add(CLI::App* app, bool with_random) {
    app->add_option("--graph", file, "Edge-list file");
    app->add_option("--family", family, "path, cycle, complete or star")
        ->check(CLI::IsMember({"path", "cycle", "complete", "star"}));
    app->add_option("--size", size, "Family size (star: number of leaves)");
    if (with_random) {
      app->add_option("--n", n, "Vertices of a G(n,p) sample");
      app->add_option("--p", p, "Edge probability");
      app->add_option("--d", d, "Expected degree (p = d/n)");
      app->add_option("--graph-seed", seed, "Seed of the G(n,p) sample");
    }
  }

  locz_graph* load() const {
    locz_graph* g = nullptr;
    const int chosen = !file.empty() + !family.empty() + (n > 0);
    if (chosen != 1) invalid("give exactly one of --graph, --family, --n");
    if (!file.empty()) {
      check(locz_graph_load(file.c_str(), &g));
    } else if (!family.empty()) {
      check(locz_graph_family(family.c_str(), size, &g));
    } else {
      if (p.has_value() == d.has_value()) invalid("give exactly one of --p and --d");
      check(locz_graph_generate(n, p ? *p : *d / n, seed, &g));
    }
    return g;
  }
};

struct GraphHandle {
  locz_graph* g;
  ~GraphHandle() { locz_graph_destroy(g); }
};

struct ExperimentFlags {
  unsigned n = 0;
  std::optional<double> p, d;
  std::optional<std::size_t> k;
  std::optional<std::string> k_rule;
  double k_multiplier = 1.0;
  std::optional<double> case_a, case_b;
  std::size_t trials = 1;
  std::optional<std::size_t> max_rounds;
  double tf_multiplier = 2.0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::optional<int> i_override;
  std::string robber;
  std::size_t samples = 0;
  std::size_t pairs = 0;
  bool timestamps = false;
  std::string out;

  void add_common(CLI::App* app) {
    app->add_option("--n", n, "Vertex count")->required();
    app->add_option("--p", p, "Edge probability");
    app->add_option("--d", d, "Expected degree (p = d/n)");
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--threads", threads, "Worker threads (default: LOCZ_THREADS or 1)");
    app->add_option("--i-override", i_override, "Sphere exponent i");
    app->add_option("--out", out, "Output directory for manifest.json and CSV tables");
    app->add_flag("--timestamps", timestamps, "Record wall-clock time in the manifest");
  }

  void add_game(CLI::App* app) {
    app->add_option("--k", k, "Sensors per round");
    app->add_option("--k-rule", k_rule, "thm61, thm51, thm64-i, thm64-ii, thm64-iii, thm64-iv");
    app->add_option("--k-multiplier", k_multiplier, "Scale applied to the k rule before rounding up");
    app->add_option("-A,--case-a", case_a, "Limit A for thm64-i");
    app->add_option("-B,--case-b", case_b, "Limit B for thm64-iii");
    app->add_option("--trials", trials, "Independent games");
    app->add_option("--max-rounds", max_rounds, "Round cap (default ceil(tf-multiplier * t_F))");
    app->add_option("--tf-multiplier", tf_multiplier, "Multiple of t_F used as the round cap");
    app->add_option("--robber", robber, "greedy-robber, diametric-robber or random-robber");
  }

  json config() const {
    json j;
    j["n"] = n;
    if (p) j["p"] = *p;
    if (d) j["d"] = *d;
    if (k) j["k"] = *k;
    if (k_rule) j["k_rule"] = *k_rule;
    j["k_multiplier"] = k_multiplier;
    if (case_a && case_b) invalid("give at most one of --case-a and --case-b");
    if (case_a) j["case_value"] = *case_a;
    if (case_b) j["case_value"] = *case_b;
    j["trials"] = trials;
    if (max_rounds) j["max_rounds"] = *max_rounds;
    j["tf_multiplier"] = tf_multiplier;
    j["seed"] = seed;
    j["threads"] = threads;
    if (i_override) j["i_override"] = *i_override;
    if (!robber.empty()) j["robber"] = robber;
    j["samples"] = samples;
    j["pairs"] = pairs;
    j["timestamps"] = timestamps;
    return j;
  }
};

void run_experiment(const std::string& kind, const ExperimentFlags& f) {
  locz_report* r = nullptr;
  check(locz_experiment(kind.c_str(), f.config().dump().c_str(), &r));
  struct Guard {
    locz_report* r;
    ~Guard() { locz_report_destroy(r); }
  } guard{r};
  if (!f.out.empty()) {
    check(locz_report_write(r, f.out.c_str()));
    return;
  }
  std::cout << locz_report_manifest(r);
  for (std::size_t i = 0; i < locz_report_table_count(r); ++i) {
    std::cout << "\n# " << locz_report_table_name(r, i) << ".csv\n" << locz_report_table_csv(r, i);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localization game on graphs: exact solver, strategies and G(n,p) experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(locz_version()));

  // gen
  auto* gen = app.add_subcommand("gen", "Write a graph as an edge list");
  GraphSource gen_src;
  std::string gen_out;
  gen_src.add(gen, false);
  gen->add_option("--n", gen_src.n, "Vertices of a G(n,p) sample");
  gen->add_option("--p", gen_src.p, "Edge probability");
  gen->add_option("--d", gen_src.d, "Expected degree (p = d/n)");
  gen->add_option("--seed", gen_src.seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // play
  auto* play = app.add_subcommand("play", "Play one game and print its transcript");
  GraphSource play_src;
  play_src.add(play, true);
  std::size_t play_k = 0;
  std::string cop = "random-cop", play_robber = "greedy-robber", mode = "class", probes, walk;
  std::optional<std::uint64_t> cop_seed, robber_seed;
  std::optional<unsigned> target;
  std::optional<std::size_t> play_rounds;
  std::uint64_t play_seed = 0;
  std::string play_out;
  play->add_option("--k", play_k, "Sensors per round")->required();
  play->add_option("--cop", cop, "random-cop or fixed-cop")
      ->check(CLI::IsMember({"random-cop", "fixed-cop"}));
  play->add_option("--probes", probes, "fixed-cop probe sets, e.g. '0,1;2,3'");
  play->add_option("--cop-seed", cop_seed, "Own stream for random-cop");
  play->add_option("--robber", play_robber, "greedy-robber, diametric-robber or random-robber");
  play->add_option("--target", target, "diametric-robber target distance");
  play->add_option("--robber-seed", robber_seed, "Seed for random robbers and walks");
  play->add_option("--mode", mode, "class or walk")->check(CLI::IsMember({"class", "walk"}));
  play->add_option("--walk", walk, "Walk mode: vertex sequence, e.g. '2,1,2'");
  play->add_option("--max-rounds", play_rounds, "Round cap (default n^2)");
  play->add_option("--seed", play_seed, "Game seed");
  play->add_option("--out", play_out, "Output file (default stdout)");

  // solve-small
  auto* solve = app.add_subcommand("solve-small", "Exact localization number and metric dimension");
  GraphSource solve_src;
  solve_src.add(solve, true);
  std::optional<std::size_t> solve_k;
  bool oracle = false;
  std::optional<unsigned> budget_n, budget_k;
  std::optional<std::uint64_t> budget_memo, budget_probes;
  std::string solve_out;
  solve->add_option("--k", solve_k, "Decide this k only");
  solve->add_flag("--oracle", oracle, "Cross-check with the brute-force search (n <= 8)");
  solve->add_option("--budget-n", budget_n, "Largest n the solver accepts (default 12)");
  solve->add_option("--budget-k", budget_k, "Largest k the solver tries");
  solve->add_option("--budget-memo", budget_memo, "State limit");
  solve->add_option("--budget-probes", budget_probes, "Probe set limit");
  solve->add_option("--out", solve_out, "Output file (default stdout)");

  // experiments
  ExperimentFlags cap, surv, expn, sym, diam;
  auto* capture = app.add_subcommand("mc-capture", "Random cop against a robber, many graphs");
  cap.add_common(capture);
  cap.add_game(capture);
  auto* survival = app.add_subcommand("mc-survival", "Diametric robber against a random cop");
  surv.add_common(survival);
  surv.add_game(survival);
  auto* expansion = app.add_subcommand("expansion-check", "Sphere sizes against d^j");
  expn.add_common(expansion);
  expansion->add_option("--samples", expn.samples, "Sampled vertices");
  expansion->add_option("--pairs", expn.pairs, "Sampled pairs");
  auto* symmdiff = app.add_subcommand("symmdiff-check", "|S(x,i) \\ S(y,i)| against its prediction");
  sym.add_common(symmdiff);
  symmdiff->add_option("--pairs", sym.pairs, "Sampled pairs");
  auto* diameter = app.add_subcommand("diameter-check", "Diameter histogram of G(n,p) samples");
  diam.add_common(diameter);
  diameter->add_option("--trials", diam.trials, "Samples");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Formula values for one (n, d)");
  double b_n = 0;
  std::optional<double> b_p, b_d, b_a, b_b;
  std::optional<int> b_i;
  std::string b_out;
  bounds->add_option("--n", b_n, "n")->required();
  bounds->add_option("--p", b_p, "Edge probability");
  bounds->add_option("--d", b_d, "Expected degree");
  bounds->add_option("--i-override", b_i, "Exponent i");
  bounds->add_option("-A,--case-a", b_a, "Limit A for case (i)");
  bounds->add_option("-B,--case-b", b_b, "Limit B for case (iii)");
  bounds->add_option("--out", b_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (gen->parsed()) {
      GraphHandle h{gen_src.load()};
      emit(take([&] {
             char* s = nullptr;
             check(locz_graph_to_text(h.g, &s));
             return s;
           }()),
           gen_out);
    } else if (play->parsed()) {
      GraphHandle h{play_src.load()};
      json j;
      j["k"] = play_k;
      j["cop"] = cop;
      if (cop == "fixed-cop") {
        if (probes.empty()) invalid("fixed-cop needs --probes");
        json sets = json::array();
        std::stringstream ss(probes);
        std::string set;
        while (std::getline(ss, set, ';')) sets.push_back(parse_list(set));
        j["probes"] = sets;
      }
      if (cop_seed) j["cop_seed"] = *cop_seed;
      j["robber"] = play_robber;
      if (target) j["target"] = *target;
      if (robber_seed) j["robber_seed"] = *robber_seed;
      j["mode"] = mode;
      if (!walk.empty()) j["walk"] = parse_list(walk);
      if (play_rounds) j["max_rounds"] = *play_rounds;
      j["seed"] = play_seed;
      char* s = nullptr;
      check(locz_play(h.g, j.dump().c_str(), &s));
      emit(take(s) + "\n", play_out);
    } else if (solve->parsed()) {
      GraphHandle h{solve_src.load()};
      json j = json::object();
      if (solve_k) j["k"] = *solve_k;
      j["oracle"] = oracle;
      if (budget_n) j["max_vertices"] = *budget_n;
      if (budget_k) j["max_sensors"] = *budget_k;
      if (budget_memo) j["max_memo_entries"] = *budget_memo;
      if (budget_probes) j["max_probe_sets"] = *budget_probes;
      char* s = nullptr;
      check(locz_solve(h.g, j.dump().c_str(), &s));
      emit(take(s), solve_out);
    } else if (capture->parsed()) {
      run_experiment("mc-capture", cap);
    } else if (survival->parsed()) {
      run_experiment("mc-survival", surv);
    } else if (expansion->parsed()) {
      run_experiment("expansion-check", expn);
    } else if (symmdiff->parsed()) {
      run_experiment("symmdiff-check", sym);
    } else if (diameter->parsed()) {
      run_experiment("diameter-check", diam);
    } else if (bounds->parsed()) {
      json j;
      j["n"] = b_n;
      if (b_p) j["p"] = *b_p;
      if (b_d) j["d"] = *b_d;
      if (b_i) j["i_override"] = *b_i;
      if (b_a) j["A"] = *b_a;
      if (b_b) j["B"] = *b_b;
      char* s = nullptr;
      check(locz_bounds(j.dump().c_str(), &s));
      emit(take(s), b_out);
    }
  } catch (const Failure& f) {
    return exit_code(f.status);
  }
  return 0;
}
