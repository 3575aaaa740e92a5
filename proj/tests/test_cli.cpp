#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gstruct/cli.hpp"
#include "gstruct/io.hpp"
#include "support.hpp"

namespace gs::testing {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "gstruct");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gstruct_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string exported(const std::string& entry) {
    std::string p = path(entry + ".json");
    CliRun r = run({"catalog", "--name", entry, "--export", p});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return p;
  }

  static json load(const std::string& p) {
    std::ifstream in(p);
    return json::parse(in);
  }
  std::string save(const json& j, const std::string& name) {
    std::string p = path(name);
    std::ofstream(p) << j.dump(2);
    return p;
  }

  fs::path dir_;
};

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitParse);
  EXPECT_EQ(run({"frobnicate"}).code, kExitParse);
  EXPECT_EQ(run({"check"}).code, kExitParse);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(Cli, CatalogListing) {
  CliRun r = run({"catalog"});
  ASSERT_EQ(r.code, kExitOk);
  for (const auto& n : catalog_names()) EXPECT_NE(r.out.find(n + "  "), std::string::npos) << n;
  CliRun j = run({"catalog", "--json"});
  ASSERT_EQ(j.code, kExitOk);
  EXPECT_EQ(json::parse(j.out).size(), catalog_names().size());
  EXPECT_EQ(run({"catalog", "--name", "nope"}).code, kExitParse);
  EXPECT_EQ(run({"catalog", "--export", path("x.json")}).code, kExitParse);
}

TEST_F(Cli, EveryEntryRoundTripsThroughAFile) {
  for (const auto& n : catalog_names()) {
    std::string p = exported(n);
    CliRun r = run({"check", p});
    EXPECT_EQ(r.code, kExitOk) << n << "\n" << r.out << r.err;
  }
}

TEST_F(Cli, ExportedFileReproducesForms) {
  std::string p = exported("s5");
  StructureFile f = read_structure_file(p);
  S5Data s5 = build_s5(build_s6());
  const auto& s = std::get<SU2Structure>(f.structure);
  EXPECT_EQ(s.omega1.to_string(), s5.literal.omega1.to_string());
  EXPECT_EQ(s.eta.to_string(), s5.literal.eta.to_string());
  EXPECT_EQ(f.expect.at("sasaki_einstein"), true);
}

TEST_F(Cli, ExpectationMismatchExitCode) {
  json j = load(exported("s5"));
  j["expect"]["sasaki_einstein"] = false;
  CliRun r = run({"check", save(j, "bad.json")});
  EXPECT_EQ(r.code, kExitExpectation);
  EXPECT_NE(r.out.find("MISMATCH"), std::string::npos);
}

TEST_F(Cli, MalformedFilesExitCodes) {
  json base = load(exported("double_hypo_model"));
  EXPECT_EQ(run({"check", path("missing.json")}).code, kExitParse);
  {
    std::ofstream(path("broken.json")) << "{ not json";
    EXPECT_EQ(run({"check", path("broken.json")}).code, kExitParse);
  }
  {
    json j = base;
    j["structure"]["forms"]["omega1"][0]["indices"] = {1, 1};
    CliRun r = run({"check", save(j, "repeat.json")});
    EXPECT_EQ(r.code, kExitParse);
    EXPECT_FALSE(r.err.empty());
  }
  {
    json j = base;
    j["structure"]["forms"]["omega1"][0]["indices"] = {1, 9};
    EXPECT_EQ(run({"check", save(j, "range.json")}).code, kExitParse);
  }
  {
    json j = base;
    j["structure"]["forms"]["eta"][0]["coeff"] = "zeta + 1";
    EXPECT_EQ(run({"check", save(j, "gen.json")}).code, kExitParse);
  }
  {
    json j = base;
    j["structure"]["forms"]["eta"][0]["coeff"] = "1/(mu";
    EXPECT_EQ(run({"check", save(j, "expr.json")}).code, kExitParse);
  }
  {
    // d(d e1) = e124 != 0.
    json j = base;
    j["coframe"]["d"] = {{"e1", {{{"coeff", "1"}, {"indices", {2, 3}}}}}, {"e3", {{{"coeff", "1"}, {"indices", {1, 4}}}}}};
    CliRun r = run({"check", save(j, "dd.json")});
    EXPECT_EQ(r.code, kExitInconsistent) << r.err;
  }
}

TEST_F(Cli, LiftChainToNearlyParallel) {
  std::string s5 = exported("s5");
  ASSERT_EQ(run({"lift", s5, "--kind", "sin-cone-nk", "--out", path("nk.json")}).code, kExitOk);
  CliRun c = run({"check", path("nk.json"), "--json"});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  json r = json::parse(c.out);
  EXPECT_EQ(r["kind"], "su3");
  EXPECT_TRUE(r["flags"]["nearly_kahler"].get<bool>());
  ASSERT_EQ(run({"lift", path("nk.json"), "--kind", "sin-cone-g2", "--out", path("g2.json")}).code, kExitOk);
  CliRun g = run({"check", path("g2.json"), "--json"});
  ASSERT_EQ(g.code, kExitOk) << g.err;
  EXPECT_TRUE(json::parse(g.out)["flags"]["nearly_parallel"].get<bool>());
}

TEST_F(Cli, ConeLiftOverEinsteinIsIntegrable) {
  std::string se = exported("se_model");
  CliRun l = run({"lift", se, "--kind", "cone"});
  ASSERT_EQ(l.code, kExitOk);
  std::string p = save(json::parse(l.out), "cone.json");
  CliRun c = run({"check", p, "--json"});
  EXPECT_TRUE(json::parse(c.out)["flags"]["integrable"].get<bool>());
}

TEST_F(Cli, LiftKindMismatch) {
  std::string nk = exported("nk_model");
  std::string s5 = exported("s5");
  EXPECT_EQ(run({"lift", nk, "--kind", "product"}).code, kExitParse);
  EXPECT_EQ(run({"lift", s5, "--kind", "g2"}).code, kExitParse);
  EXPECT_EQ(run({"lift", s5, "--kind", "helix"}).code, kExitParse);
}

TEST_F(Cli, EvolveVerify) {
  std::string cs = exported("su2xA2_cs");
  std::string nh = exported("su2xA2_nh");
  CliRun a = run({"evolve-verify", cs, "--equations", "cs"});
  EXPECT_EQ(a.code, kExitOk) << a.out << a.err;
  EXPECT_NE(a.out.find("warning"), std::string::npos);
  EXPECT_EQ(run({"evolve-verify", nh, "--equations", "nearly-hypo"}).code, kExitOk);
  EXPECT_EQ(run({"evolve-verify", nh, "--equations", "cs"}).code, kExitExpectation);
  EXPECT_EQ(run({"evolve-verify", nh, "--equations", "ricci"}).code, kExitParse);
  EXPECT_EQ(run({"evolve-verify", exported("s5"), "--equations", "cs"}).code, kExitParse);
  CliRun j = run({"evolve-verify", cs, "--equations", "cs", "--json"});
  json r = json::parse(j.out);
  EXPECT_TRUE(r["passed"].get<bool>());
  EXPECT_FALSE(r["compatible"].get<bool>());
}

TEST_F(Cli, EvolveVerifyOnLiftedFamily) {
  std::string nk = exported("nk_model");
  // A sin-cone G2 family lives on a slice frame; export it through the io layer.
  StructureFile f;
  f.name = "nk_family";
  TimeFamily fam = sin_cone_g2_family(build_abstract_models().nk);
  f.structure = std::get<SU3Structure>(fam.structure);
  f.derivation = fam.derivation;
  write_structure_file(f, path("fam.json"));
  EXPECT_EQ(run({"evolve-verify", path("fam.json"), "--equations", "nhf"}).code, kExitOk);
  EXPECT_EQ(run({"evolve-verify", path("fam.json"), "--equations", "hitchin"}).code, kExitExpectation);
  EXPECT_EQ(run({"evolve-verify", nk, "--equations", "nhf"}).code, kExitParse);
}

std::vector<std::string> top_level_keys(const std::string& text) {
  std::vector<std::string> keys;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '{' || c == '[') ++depth;
    if (c == '}' || c == ']') --depth;
    if (c == '"' && depth == 1) {
      std::size_t end = text.find('"', i + 1);
      if (text.compare(end + 1, 1, ":") == 0) keys.push_back(text.substr(i + 1, end - i - 1));
      i = end;
    } else if (c == '"') {
      i = text.find('"', i + 1);
    }
  }
  return keys;
}

TEST_F(Cli, JsonReportMatchesGoldenFile) {
  std::string p = exported("double_hypo_model");
  CliRun r = run({"check", p, "--json"});
  ASSERT_EQ(r.code, kExitOk);
  auto keys = top_level_keys(r.out);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  json got = json::parse(r.out);
  got.erase("file");
  std::ifstream in(std::string(GSTRUCT_TEST_DIR) + "/golden/double_hypo_model_check.json");
  ASSERT_TRUE(in.good());
  json want = json::parse(in);
  EXPECT_EQ(got, want) << got.dump(2);
}

TEST_F(Cli, ThreadedChecksAgree) {
  std::string p = exported("s3s3_r8");
  CliRun single = run({"check", p, "--json"});
  setenv("GSTRUCT_THREADS", "4", 1);
  EXPECT_EQ(thread_count(), 4);
  CliRun multi = run({"check", p, "--json"});
  unsetenv("GSTRUCT_THREADS");
  EXPECT_EQ(thread_count(), 1);
  EXPECT_EQ(single.out, multi.out);
}

}  // namespace
}  // namespace gs::testing
