#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "combitag/cli.hpp"
#include "combitag/corpus.hpp"
#include "combitag/util.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace combitag;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"combitag"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream captured;
  auto* old = std::cout.rdbuf(captured.rdbuf());
  int code = cli_main(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return {code, captured.str()};
}

// Fresh working directory per scenario; the CLI writes relative paths.
struct TempDir {
  fs::path path;
  fs::path previous;

  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("combitag_" + name);
    fs::remove_all(path);
    fs::create_directories(path);
    previous = fs::current_path();
    fs::current_path(path);
  }
  ~TempDir() {
    fs::current_path(previous);
    fs::remove_all(path);
  }
};

std::string value_of(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    auto fields = split_fields(line, '\t');
    if (fields.size() == 2 && fields[0] == key) return fields[1];
  }
  return {};
}

void run_pipeline(std::uint64_t seed) {
  REQUIRE(run({"synth", "--tokens", "4000", "--acc", "0.88,0.90,0.92,0.94",
               "--ids", "T,R,M,E", "--seed", std::to_string(seed),
               "--out-prefix", "bench"})
              .code == 0);
  REQUIRE(run({"split", "--in", "bench.gold.vert", "--out-prefix", "corpus"})
              .code == 0);
  REQUIRE(run({"split", "--matrix", "bench.matrix", "--out-prefix", "m"}).code == 0);
  REQUIRE(run({"train-t", "--train", "corpus.train.vert", "--model", "t.model"})
              .code == 0);
  REQUIRE(run({"tag-t", "--model", "t.model", "--input", "corpus.test.vert",
               "--output", "t.col"})
              .code == 0);
  REQUIRE(run({"train-m", "--train", "corpus.train.vert", "--model", "m.model"})
              .code == 0);
  REQUIRE(run({"tag-m", "--model", "m.model", "--input", "corpus.test.vert",
               "--output", "m.col"})
              .code == 0);
  REQUIRE(run({"align", "--benchmark", "corpus.test.vert", "--columns",
               "t.col,m.col", "--ids", "T,M", "--out", "own.matrix"})
              .code == 0);
  REQUIRE(run({"baseline", "--method", "lexprob", "--train", "corpus.train.vert",
               "--input", "corpus.test.vert", "--output", "lp.col"})
              .code == 0);
  REQUIRE(run({"combine", "--method", "tagpair", "--tune", "m.tune.matrix",
               "--test", "m.test.matrix", "--seed", "5", "--output", "tp.col",
               "--save-table", "pairs.table", "--format", "machine", "--report",
               "combine.report"})
              .code == 0);
  REQUIRE(run({"eval", "--pred", "t.col", "--gold", "corpus.test.vert",
               "--against", "m.col", "--train", "corpus.train.vert", "--format",
               "machine", "--report", "eval.report"})
              .code == 0);
  REQUIRE(run({"eval", "--matrix", "m.tune.matrix", "--format", "machine",
               "--report", "agreement.report"})
              .code == 0);
  REQUIRE(run({"sweep", "--method", "tagpair", "--matrix", "m.test.matrix",
               "--tune", "m.tune.matrix", "--seed", "5", "--format", "machine",
               "--report", "sweep.report"})
              .code == 0);
}

} // namespace

TEST_CASE("cli: full pipeline runs and the combination beats its components") {
  TempDir dir("pipeline");
  run_pipeline(7);

  const std::string combine_report = read_file("combine.report");
  const double combined = std::stod(value_of(combine_report, "accuracy"));
  const std::string sweep_report = read_file("sweep.report");
  for (const char* id : {"T", "R", "M", "E"}) {
    const double single = std::stod(value_of(sweep_report, std::string("acc.") + id));
    CHECK(combined > single);
  }

  // The eval report carries accuracy, the discordant-pair test and rates.
  const std::string eval_report = read_file("eval.report");
  CHECK_FALSE(value_of(eval_report, "accuracy").empty());
  CHECK_FALSE(value_of(eval_report, "mcnemar-chi2").empty());
  CHECK_FALSE(value_of(eval_report, "new-token-rate").empty());

  // Agreement fractions sum to 1.
  const std::string agreement = read_file("agreement.report");
  double sum = std::stod(value_of(agreement, "all-correct")) +
               std::stod(value_of(agreement, "majority-correct")) +
               std::stod(value_of(agreement, "correct-no-majority")) +
               std::stod(value_of(agreement, "minority-correct")) +
               std::stod(value_of(agreement, "all-wrong"));
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));

  // Manifests accompany every written artifact.
  for (const char* file :
       {"bench.gold.vert", "t.model", "t.col", "tp.col", "pairs.table",
        "combine.report", "eval.report", "sweep.report"}) {
    CHECK(fs::exists(std::string(file) + ".manifest"));
  }

  // A 4000-token corpus splits 8/1/1 by utterances.
  auto full = load_corpus("bench.gold.vert");
  auto train = load_corpus("corpus.train.vert");
  auto tune = load_corpus("corpus.tune.vert");
  auto test = load_corpus("corpus.test.vert");
  CHECK(train.utterances.size() + tune.utterances.size() + test.utterances.size() ==
        full.utterances.size());
  CHECK(train.utterances.size() >= 7 * tune.utterances.size());
}

TEST_CASE("cli: identical manifests give byte-identical outputs") {
  std::map<std::string, std::string> first;
  {
    TempDir dir("determinism_a");
    run_pipeline(21);
    for (const auto& entry : fs::directory_iterator(".")) {
      first[entry.path().filename().string()] = read_file(entry.path().string());
    }
  }
  TempDir dir("determinism_b");
  run_pipeline(21);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(".")) {
    const std::string name = entry.path().filename().string();
    REQUIRE(first.count(name) == 1);
    CHECK(read_file(name) == first[name]);
    ++compared;
  }
  CHECK(compared == first.size());
  CHECK(compared > 20);
}

TEST_CASE("cli: manifests record command, seed and input digests") {
  TempDir dir("manifest");
  REQUIRE(run({"synth", "--tokens", "2000", "--acc", "0.9,0.8", "--seed", "13",
               "--out-prefix", "bench"})
              .code == 0);
  REQUIRE(run({"split", "--matrix", "bench.matrix", "--out-prefix", "m"}).code == 0);
  REQUIRE(run({"combine", "--method", "stack-mbl", "--variant", "tags-context",
               "--tune", "m.tune.matrix", "--test", "m.test.matrix", "--seed",
               "4", "--output", "sm.col"})
              .code == 0);

  const std::string manifest = read_file("sm.col.manifest");
  CHECK(value_of(manifest, "subcommand") == "combine");
  CHECK(value_of(manifest, "method") == "stack-mbl");
  CHECK(value_of(manifest, "variant") == "tags-context");
  CHECK(value_of(manifest, "seed") == "4");
  CHECK(value_of(manifest, "artifact") == "0.1.0");
  CHECK(value_of(manifest, "input.m.tune.matrix") ==
        file_digest_hex("m.tune.matrix"));
  CHECK(value_of(manifest, "input.m.test.matrix") ==
        file_digest_hex("m.test.matrix"));

  // The stacked tree path and the pruning flag parse and run.
  REQUIRE(run({"combine", "--method", "stack-tree", "--variant", "tags",
               "--prune-cf", "0.1", "--tune", "m.tune.matrix", "--test",
               "m.test.matrix", "--output", "st.col"})
              .code == 0);
  // The tree stacker refuses the word variant.
  CHECK(run({"combine", "--method", "stack-tree", "--variant", "tags-word",
             "--tune", "m.tune.matrix", "--test", "m.test.matrix"})
            .code == 1);
  // A column scored against the wrong corpus fails cleanly.
  auto mismatch = run({"eval", "--pred", "sm.col", "--gold", "bench.gold.vert"});
  CHECK(mismatch.code == 1);
}

TEST_CASE("cli: continuity flag changes the reported statistic") {
  TempDir dir("continuity");
  REQUIRE(run({"synth", "--tokens", "2500", "--acc", "0.8,0.9", "--seed", "3",
               "--out-prefix", "bench"})
              .code == 0);
  REQUIRE(run({"split", "--in", "bench.gold.vert", "--out-prefix", "c"}).code == 0);
  REQUIRE(run({"baseline", "--method", "lexprob", "--train", "c.train.vert",
               "--input", "c.test.vert", "--output", "lp.col"})
              .code == 0);
  REQUIRE(run({"baseline", "--method", "random", "--train", "c.train.vert",
               "--input", "c.test.vert", "--output", "rnd.col", "--seed", "8"})
              .code == 0);
  auto corrected = run({"eval", "--pred", "lp.col", "--gold", "c.test.vert",
                        "--against", "rnd.col", "--format", "machine"});
  auto raw = run({"eval", "--pred", "lp.col", "--gold", "c.test.vert",
                  "--against", "rnd.col", "--no-continuity", "--format",
                  "machine"});
  REQUIRE(corrected.code == 0);
  REQUIRE(raw.code == 0);
  const double chi_corrected = std::stod(value_of(corrected.out, "mcnemar-chi2"));
  const double chi_raw = std::stod(value_of(raw.out, "mcnemar-chi2"));
  CHECK(chi_raw > chi_corrected); // discordant counts differ here
}

TEST_CASE("cli: inspect-pairs prints the stored distribution") {
  TempDir dir("inspect");
  run_pipeline(3);
  auto result = run({"inspect-pairs", "--table", "pairs.table", "--pair", "T,R",
                     "--tags", "T00,T00"});
  CHECK(result.code == 0);
  CHECK(result.out.find("T=T00 R=T00") != std::string::npos);
  CHECK(result.out.find("observed") != std::string::npos);
  // Probabilities print with four decimals.
  const bool has_prob = result.out.find("0.") != std::string::npos ||
                        result.out.find("1.0000") != std::string::npos;
  CHECK(has_prob);

  auto missing = run({"inspect-pairs", "--table", "pairs.table", "--pair", "T,R",
                      "--tags", "zz,zz"});
  CHECK(missing.code == 1);
}

TEST_CASE("cli: exit codes") {
  TempDir dir("exitcodes");
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"frobnicate"}).code == 2);                    // unknown subcommand
  CHECK(run({"split", "--nope", "x"}).code == 2);          // unknown flag
  CHECK(run({"split", "--in", "missing.vert", "--out-prefix", "x"}).code == 1);
  CHECK(run({"split", "--out-prefix", "x"}).code == 1);    // neither input kind
  CHECK(run({"combine", "--method", "wat", "--tune", "a", "--test", "b"}).code ==
        2); // rejected by the option validator
}

TEST_CASE("cli: serial flag reproduces parallel results") {
  TempDir dir("serialflag");
  REQUIRE(run({"synth", "--tokens", "3000", "--acc", "0.9,0.85", "--seed", "9",
               "--out-prefix", "bench"})
              .code == 0);
  REQUIRE(run({"split", "--matrix", "bench.matrix", "--out-prefix", "m"}).code == 0);
  REQUIRE(run({"combine", "--method", "majority", "--tune", "m.tune.matrix",
               "--test", "m.test.matrix", "--seed", "3", "--output", "par.col"})
              .code == 0);
  REQUIRE(run({"--serial", "combine", "--method", "majority", "--tune",
               "m.tune.matrix", "--test", "m.test.matrix", "--seed", "3",
               "--output", "ser.col"})
              .code == 0);
  CHECK(read_file("par.col") == read_file("ser.col"));
}
