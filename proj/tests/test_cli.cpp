#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = tilegate::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST(Cli, CandidatesJson) {
  CliResult r = invoke({"candidates", "--n", "8", "--json"});
  EXPECT_EQ(r.code, 0);
  auto j = tilegate::json::parse(r.out);
  EXPECT_EQ(j["n"], 8);
  EXPECT_EQ(j["provenance"], "Corollary_8gon");
  EXPECT_EQ(r.out.rfind("{\"candidates\":", 0), 0u);
}

TEST(Cli, CandidatesRangeOneLinePerN) {
  CliResult r = invoke({"candidates", "--range", "5..12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 8);
}

TEST(Cli, AuditImpossible) {
  CliResult r = invoke({"audit", "--n", "8", "--alpha", "1/5", "--json"});
  EXPECT_EQ(r.code, 0);
  auto j = tilegate::json::parse(r.out);
  EXPECT_EQ(j["outcome"], "Impossible");
  CliResult text = invoke({"audit", "--n", "8", "--alpha", "1/8"});
  EXPECT_NE(text.out.find("Impossible"), std::string::npos);
}

TEST(Cli, LemmasExitCodes) {
  CliResult r = invoke({"lemmas", "--which", "6", "--n-range", "5..40", "--json"});
  EXPECT_EQ(r.code, 0);
  auto j = tilegate::json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["lemma"], "L6");
  EXPECT_EQ(j["witnesses"].size(), 1u);
}

TEST(Cli, GenerateThenVerify) {
  const std::string path = temp_path("tilegate_cli_t5.json");
  EXPECT_EQ(invoke({"gen-trivial", "--n", "5", "--out", path}).code, 0);
  CliResult v = invoke({"verify", path});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out.rfind("PASS", 0), 0u);

  auto t = tilegate::load_tiling(path);
  t.triangles.pop_back();
  tilegate::save_tiling(t, path);
  CliResult bad = invoke({"verify", path, "--json"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(tilegate::json::parse(bad.out)["first_failure"], "area_cover");
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"nonsense"}).code, 2);
  EXPECT_EQ(invoke({"audit", "--n", "8"}).code, 2);
  EXPECT_EQ(invoke({"audit", "--n", "8", "--alpha", "x"}).code, 2);
  EXPECT_EQ(invoke({"audit", "--n", "3", "--alpha", "1/4"}).code, 2);
  EXPECT_EQ(invoke({"candidates", "--range", "9..5"}).code, 2);
  EXPECT_EQ(invoke({"lemmas", "--which", "7"}).code, 2);
  CliResult missing = invoke({"verify", "/nonexistent/file.json"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_EQ(missing.err.rfind("tilegate: ", 0), 0u);
  EXPECT_TRUE(missing.out.empty());
}

TEST(Cli, JsonIsByteStable) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"candidates", "--range", "5..30", "--json"},
           {"audit", "--n", "12", "--alpha", "1/6", "--json"},
           {"lemmas", "--which", "4", "--max-den", "30", "--json"}}) {
    EXPECT_EQ(invoke(args).out, invoke(args).out);
  }
}
