#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "locz/locz.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  locz_string_free(s);
  return out;
}

struct GraphHandle {
  locz_graph* g = nullptr;
  ~GraphHandle() { locz_graph_destroy(g); }
};

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(locz_version(), "1.0.0");
  EXPECT_STREQ(locz_status_name(LOCZ_OK), "ok");
  EXPECT_STRNE(locz_status_name(LOCZ_ERR_INVALID_PAIR), locz_status_name(LOCZ_ERR_PARSE));
}

TEST(CApi, GraphBasics) {
  GraphHandle h;
  ASSERT_EQ(locz_graph_generate(1000, 0.01, 42, &h.g), LOCZ_OK);
  EXPECT_EQ(locz_graph_vertex_count(h.g), 1000u);
  EXPECT_EQ(locz_graph_edge_count(h.g), 5084u);

  GraphHandle c6;
  ASSERT_EQ(locz_graph_family("cycle", 6, &c6.g), LOCZ_OK);
  std::vector<uint32_t> dist(6);
  ASSERT_EQ(locz_graph_bfs(c6.g, 0, dist.data()), LOCZ_OK);
  EXPECT_EQ(dist, (std::vector<uint32_t>{0, 1, 2, 3, 2, 1}));
  uint32_t diam = 0;
  ASSERT_EQ(locz_graph_diameter(c6.g, &diam), LOCZ_OK);
  EXPECT_EQ(diam, 3u);
  EXPECT_EQ(locz_graph_is_connected(c6.g), 1);
  EXPECT_EQ(locz_graph_bfs(c6.g, 6, dist.data()), LOCZ_ERR_INVALID_ARGUMENT);
  EXPECT_STRNE(locz_last_error(), "");
}

TEST(CApi, ParseTextRoundTripAndErrors) {
  GraphHandle h;
  ASSERT_EQ(locz_graph_parse("4 2\n0 1\n2 3\n", &h.g), LOCZ_OK);
  EXPECT_EQ(locz_graph_is_connected(h.g), 0);
  uint32_t diam = 0;
  ASSERT_EQ(locz_graph_diameter(h.g, &diam), LOCZ_OK);
  EXPECT_EQ(diam, LOCZ_UNREACHABLE);
  char* text = nullptr;
  ASSERT_EQ(locz_graph_to_text(h.g, &text), LOCZ_OK);
  EXPECT_EQ(take(text), "4 2\n0 1\n2 3\n");

  locz_graph* bad = nullptr;
  EXPECT_EQ(locz_graph_parse("3 1\n1 1\n", &bad), LOCZ_ERR_PARSE);
  EXPECT_EQ(bad, nullptr);
  EXPECT_EQ(locz_graph_family("wheel", 5, &bad), LOCZ_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(locz_graph_load("/nonexistent/graph.txt", &bad), LOCZ_ERR_IO);
}

TEST(CApi, SaveLoad) {
  GraphHandle h;
  ASSERT_EQ(locz_graph_generate(40, 0.2, 3, &h.g), LOCZ_OK);
  const auto path = (std::filesystem::temp_directory_path() / "locz_capi_graph.txt").string();
  ASSERT_EQ(locz_graph_save(h.g, path.c_str()), LOCZ_OK);
  GraphHandle back;
  ASSERT_EQ(locz_graph_load(path.c_str(), &back.g), LOCZ_OK);
  EXPECT_EQ(locz_graph_fingerprint(back.g), locz_graph_fingerprint(h.g));
  std::filesystem::remove(path);
}

TEST(CApi, PlayAndReplay) {
  GraphHandle h;
  ASSERT_EQ(locz_graph_family("path", 3, &h.g), LOCZ_OK);
  char* out = nullptr;
  ASSERT_EQ(locz_play(h.g, R"({"k":1,"cop":"fixed-cop","probes":[[0]]})", &out), LOCZ_OK);
  const std::string transcript = take(out);
  const auto j = json::parse(transcript);
  EXPECT_EQ(j["outcome"]["result"], "CopWin");
  EXPECT_EQ(j["outcome"]["round"], 1);
  EXPECT_EQ(locz_replay(h.g, transcript.c_str()), LOCZ_OK);

  GraphHandle k3;
  ASSERT_EQ(locz_graph_family("complete", 3, &k3.g), LOCZ_OK);
  EXPECT_EQ(locz_replay(k3.g, transcript.c_str()), LOCZ_ERR_PARSE);
  ASSERT_EQ(locz_play(k3.g, R"({"k":1,"max_rounds":5,"seed":3})", &out), LOCZ_OK);
  EXPECT_EQ(json::parse(take(out))["outcome"]["result"], "RobberSurvived");

  ASSERT_EQ(locz_play(k3.g, R"({"k":1,"cop":"fixed-cop","probes":[[0]],"mode":"walk","walk":[1,2,1]})",
                      &out),
            LOCZ_OK);
  take(out);
  EXPECT_EQ(locz_play(k3.g, R"({"k":4})", &out), LOCZ_ERR_INVALID_K);
  EXPECT_EQ(locz_play(k3.g, R"({"k":1,"colour":"red"})", &out), LOCZ_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(locz_play(k3.g, "{oops", &out), LOCZ_ERR_INVALID_ARGUMENT);

  GraphHandle p5;
  ASSERT_EQ(locz_graph_family("path", 5, &p5.g), LOCZ_OK);
  EXPECT_EQ(locz_play(p5.g, R"({"k":1,"mode":"walk","walk":[0,4],"cop":"fixed-cop","probes":[[2],[2]]})", &out),
            LOCZ_ERR_ILLEGAL_ROBBER_MOVE);

  GraphHandle split;
  ASSERT_EQ(locz_graph_parse("4 2\n0 1\n2 3\n", &split.g), LOCZ_OK);
  EXPECT_EQ(locz_play(split.g, R"({"k":1})", &out), LOCZ_ERR_DISCONNECTED_GRAPH);
}

TEST(CApi, Solve) {
  GraphHandle c6;
  ASSERT_EQ(locz_graph_family("cycle", 6, &c6.g), LOCZ_OK);
  char* out = nullptr;
  ASSERT_EQ(locz_solve(c6.g, R"({"k":1})", &out), LOCZ_OK);
  EXPECT_EQ(json::parse(take(out))["verdict"], "RobberWins");
  ASSERT_EQ(locz_solve(c6.g, R"({"oracle":true})", &out), LOCZ_OK);
  const auto m = json::parse(take(out));
  EXPECT_EQ(m["summary"]["zeta"], 2);
  EXPECT_EQ(m["summary"]["beta"], 2);

  GraphHandle big;
  ASSERT_EQ(locz_graph_family("path", 13, &big.g), LOCZ_OK);
  EXPECT_EQ(locz_solve(big.g, "{}", &out), LOCZ_ERR_BUDGET_EXCEEDED);
}

TEST(CApi, BoundsAndExperiment) {
  char* out = nullptr;
  ASSERT_EQ(locz_bounds(R"({"n":3000,"d":271.63446})", &out), LOCZ_OK);
  EXPECT_NEAR(json::parse(take(out))["upper_bound_main"].get<double>(), 156.274, 1e-2);
  EXPECT_EQ(locz_bounds(R"({"n":3000,"d":271.6,"A":-1})", &out), LOCZ_ERR_CASE_MISMATCH);

  locz_report* r = nullptr;
  ASSERT_EQ(locz_experiment("mc-capture", R"({"n":60,"d":10,"k":60,"trials":3,"seed":1})", &r),
            LOCZ_OK);
  EXPECT_EQ(json::parse(locz_report_manifest(r))["summary"]["capture_rate"], 1.0);
  ASSERT_GE(locz_report_table_count(r), 1u);
  EXPECT_STREQ(locz_report_table_name(r, 0), "trials");
  EXPECT_NE(std::strlen(locz_report_table_csv(r, 0)), 0u);
  EXPECT_EQ(locz_report_table_name(r, 99), nullptr);
  locz_report_destroy(r);

  locz_report* none = nullptr;
  EXPECT_EQ(locz_experiment("mc-capture", R"({"n":60,"d":10,"trials":3})", &none),
            LOCZ_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(none, nullptr);
}
