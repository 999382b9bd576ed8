#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "evoline/cli.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

using namespace evoline;
namespace oracle = evoline::testing;
namespace fs = std::filesystem;

namespace {

const std::string kSamples = EVOLINE_SAMPLES_DIR;
const fs::path kGolden = EVOLINE_GOLDEN_DIR;

std::string sample(const std::string& name) { return kSamples + "/" + name; }

fs::path temp_file(const std::string& name, const std::string& contents) {
  const fs::path p = fs::temp_directory_path() / ("evoline_test_" + name);
  std::ofstream(p, std::ios::binary) << contents;
  return p;
}

}  // namespace

TEST(Golden, MatchesStoredOutputs) {
  const bool regen = std::getenv("EVOLINE_REGEN_GOLDEN") != nullptr;
  for (const auto& c : oracle::golden_cases()) {
    const auto r = oracle::run_cli(oracle::resolve_args(c, kSamples));
    if (regen) {
      oracle::write_golden(kGolden, c, r);
      continue;
    }
    EXPECT_EQ(oracle::compare_golden(kGolden, c, r), "");
  }
}

TEST(Golden, RepeatedRunsAreByteIdentical) {
  for (const auto& c : oracle::golden_cases()) {
    const auto args = oracle::resolve_args(c, kSamples);
    const auto a = oracle::run_cli(args);
    const auto b = oracle::run_cli(args);
    EXPECT_EQ(a.out, b.out) << c.name;
    EXPECT_EQ(a.err, b.err) << c.name;
    EXPECT_EQ(a.code, b.code) << c.name;
  }
}

TEST(Document, RoundTripIsByteIdentical) {
  for (const char* f : {"example23.json", "example24.json", "example25.json", "example41.json", "cycle2_q.json",
                        "cycle2_f7.json", "idempotent1.json", "cycle3_weighted_f7.json"}) {
    const std::string text = cli::read_file(sample(f));
    EXPECT_EQ(serialize_algebra(parse_algebra(text)), text) << f;
  }
  for (const auto& alg : oracle::fuzz_corpus(100, 81)) {
    const std::string text = serialize_algebra(alg);
    const Algebra back = parse_algebra(text);
    EXPECT_EQ(back.structure(), alg.structure());
    EXPECT_EQ(serialize_algebra(back), text);
  }
}

TEST(Document, ParsesCompactForms) {
  const Algebra a = parse_algebra(R"({"field":"Q","dim":2,"matrix":[["0","1"],["0","1"]]})");
  EXPECT_EQ(a.structure(), Matrix::from_ints(FieldSpec::rationals(), {{0, 1}, {0, 1}}));
  const Algebra b = parse_algebra(R"({"field":"F7","dim":2,"matrix":[["0","1"],["1","0"]]})");
  EXPECT_EQ(b.spec(), FieldSpec::prime(7));
  EXPECT_EQ(parse_algebra(R"({"field":"Q","dim":1,"matrix":[["-3/6"]]})").constant(0, 0).to_string(), "-1/2");
}

TEST(Document, Errors) {
  const std::vector<std::pair<std::string, ErrorCategory>> bad{
      {R"({"field":"Q","dim":2,"matrix":[["0","1","0"],["0","1","0"]]})", ErrorCategory::ShapeError},
      {R"({"field":"Q","dim":2,"matrix":[["0","1"]]})", ErrorCategory::ShapeError},
      {R"({"field":"Q","dim":0,"matrix":[]})", ErrorCategory::ShapeError},
      {R"({"field":"Q","dim":1,"matrix":[[1]]})", ErrorCategory::BadScalar},
      {R"({"field":"Q","dim":1,"matrix":[["1.5"]]})", ErrorCategory::BadScalar},
      {R"({"field":"F7","dim":1,"matrix":[["9"]]})", ErrorCategory::BadScalar},
      {R"({"field":"F6","dim":1,"matrix":[["1"]]})", ErrorCategory::BadFieldTag},
      {R"({"field":"Q","dim":1,"matrix":[["1"]],"extra":1})", ErrorCategory::ParseError},
      {R"({"field":"Q","dim":1,"matrix":[["1"]])", ErrorCategory::ParseError},
      {R"([1, 2])", ErrorCategory::ParseError},
  };
  for (const auto& [text, category] : bad) {
    try {
      (void)parse_algebra(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.category(), category) << text << " -> " << e.what();
    }
  }
}

TEST(Document, ParseErrorsCarryPosition) {
  try {
    (void)parse_algebra("{\n  \"field\": \"Q\",\n  \"dim\": 1\n  \"matrix\": []\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Cli, ExitStatusMatchesErrorEmission) {
  const auto ok = oracle::run_cli({"nilpotency", sample("example25.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.err.empty());
  EXPECT_NE(ok.out.find("nilpotent: true, right index 3"), std::string::npos);

  const auto refused = oracle::run_cli({"aut", sample("example41.json")});
  EXPECT_EQ(refused.code, 1);
  EXPECT_EQ(refused.err, "error [NotRegular]: E ≠ E²: automorphism group may be infinite\n");

  const auto refused_json = oracle::run_cli({"aut", sample("example41.json"), "--json"});
  EXPECT_EQ(refused_json.code, 1);
  const auto j = nlohmann::json::parse(refused_json.out);
  EXPECT_EQ(j["error"]["category"], "NotRegular");

  const auto missing = oracle::run_cli({"analyze", sample("no_such_file.json")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("[ParseError]"), std::string::npos);

  const auto usage = oracle::run_cli({"frobnicate"});
  EXPECT_NE(usage.code, 0);
  EXPECT_NE(oracle::run_cli({}).code, 0);
}

TEST(Cli, AnalyzeReportsGroupOfTwoCycle) {
  const auto r = oracle::run_cli({"aut", sample("cycle2_f7.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("order 6"), std::string::npos);
  std::size_t maps = 0;
  for (std::size_t pos = 0; (pos = r.out.find("e1 -> ", pos)) != std::string::npos; ++pos) ++maps;
  EXPECT_EQ(maps, 6U);
}

TEST(Cli, JsonAndTextCarrySameFacts) {
  for (const char* f : {"example23.json", "example24.json", "example25.json", "example41.json", "cycle2_f7.json",
                        "cycle3_weighted_f7.json"}) {
    const auto text = oracle::run_cli({"analyze", sample(f)});
    const auto json = oracle::run_cli({"analyze", sample(f), "--json"});
    ASSERT_EQ(text.code, 0);
    ASSERT_EQ(json.code, 0);
    const auto j = nlohmann::json::parse(json.out);
    const bool nil = j["nilpotency"]["nilpotent"];
    EXPECT_EQ(text.out.find("nilpotent: true") != std::string::npos, nil) << f;
    const bool regular = j["regular"]["value"];
    EXPECT_NE(text.out.find(std::string("regular (E = E²): ") + (regular ? "true" : "false")), std::string::npos);
    EXPECT_NE(text.out.find("(det = " + j["regular"]["determinant"].get<std::string>() + ")"), std::string::npos);
    EXPECT_NE(text.out.find("annihilator: dim " + std::to_string(j["annihilator"]["dim"].get<int>())),
              std::string::npos);
    const auto& aut = j["automorphisms"];
    if (aut["status"] == "computed") {
      EXPECT_NE(text.out.find("order " + std::to_string(aut["order"].get<int>())), std::string::npos);
    } else {
      EXPECT_NE(text.out.find("refused [" + aut["category"].get<std::string>() + "]"), std::string::npos);
    }
    if (nil) {
      EXPECT_NE(text.out.find("right index " + std::to_string(j["nilpotency"]["right_index"].get<int>())),
                std::string::npos);
    }
  }
}

TEST(Cli, DotToPathMatchesStdout) {
  const fs::path out = fs::temp_directory_path() / "evoline_test_graph.dot";
  const auto to_file = oracle::run_cli({"graph", sample("example23.json"), "--dot", out.string()});
  ASSERT_EQ(to_file.code, 0);
  const auto to_stdout = oracle::run_cli({"graph", sample("example23.json"), "--dot", "-"});
  EXPECT_EQ(oracle::slurp(out).value_or(""), to_stdout.out);
  EXPECT_EQ(to_stdout.out, oracle::run_cli({"graph", sample("example23.json")}).out);
  fs::remove(out);
}

TEST(Cli, MaxNPrecedence) {
  const std::string file = sample("cycle2_f7.json");
  ::setenv("EVOLINE_MAX_N", "1", 1);
  EXPECT_EQ(oracle::run_cli({"aut", file}).code, 1);
  EXPECT_NE(oracle::run_cli({"aut", file}).err.find("[SizeLimit]"), std::string::npos);
  EXPECT_EQ(oracle::run_cli({"aut", file, "--max-n", "2"}).code, 0);
  ::setenv("EVOLINE_MAX_N", "nonsense", 1);
  EXPECT_NE(oracle::run_cli({"aut", file}).err.find("[Usage]"), std::string::npos);
  ::unsetenv("EVOLINE_MAX_N");
  EXPECT_EQ(oracle::run_cli({"aut", file}).code, 0);
  EXPECT_EQ(oracle::run_cli({"aut", file, "--max-n", "1"}).code, 1);
}

TEST(Cli, QuotientAndIdealErrors) {
  const auto q = oracle::run_cli({"quotient", sample("example25.json"), "--ideal", sample("ideal_e3.json")});
  ASSERT_EQ(q.code, 0);
  EXPECT_EQ(parse_algebra(q.out).structure(), Matrix::from_ints(FieldSpec::rationals(), {{0, 1}, {0, 0}}));

  const fs::path not_ideal = temp_file("not_ideal.json", R"([["1","0","0"]])");
  const auto r = oracle::run_cli({"quotient", sample("example25.json"), "--ideal", not_ideal.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("[NotAnIdeal]"), std::string::npos);

  const fs::path whole = temp_file("whole.json", R"([["1","0","0"],["0","1","0"],["0","0","1"]])");
  EXPECT_NE(oracle::run_cli({"quotient", sample("example25.json"), "--ideal", whole.string()}).err.find("[NotProper]"),
            std::string::npos);

  const fs::path bad_shape = temp_file("bad_shape.json", R"([["1","0"]])");
  EXPECT_NE(
      oracle::run_cli({"quotient", sample("example25.json"), "--ideal", bad_shape.string()}).err.find("[ShapeError]"),
      std::string::npos);
  fs::remove(not_ideal);
  fs::remove(whole);
  fs::remove(bad_shape);
}

TEST(Cli, IsoCommand) {
  const fs::path scaled = temp_file("cycle2_scaled_f5.json",
                                    "{\"field\":\"F5\",\"dim\":2,\"matrix\":[[\"0\",\"2\"],[\"1\",\"0\"]]}");
  const fs::path base = temp_file("cycle2_f5.json", "{\"field\":\"F5\",\"dim\":2,\"matrix\":[[\"0\",\"1\"],[\"1\",\"0\"]]}");
  const auto r = oracle::run_cli({"iso", base.string(), scaled.string(), "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["isomorphic"].get<bool>());
  EXPECT_EQ(oracle::run_cli({"iso", sample("cycle2_q.json"), sample("idempotent1.json")}).out, "not isomorphic\n");
  fs::remove(scaled);
  fs::remove(base);
}
