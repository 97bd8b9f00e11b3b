#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "combitag/pairwise.hpp"
#include "combitag/rng.hpp"
#include "combitag/synth.hpp"
#include "combitag/util.hpp"
#include "combitag/voting.hpp"

#include "test_support.hpp"

#include <cmath>
#include <sstream>

using namespace combitag;
using combitag::testing::matrix_of;

namespace {

// Two-tagger tune set: 58 rows where the pair suggests (DT, CS) with the
// observed gold mix 19 CS / 36 DT / 1 QL / 2 WPR, plus filler agreements.
TaggerMatrix conjunction_fixture() {
  TaggerMatrix tune;
  tune.tagger_ids = {"E", "T"};
  auto add = [&tune](const char* gold, const char* e, const char* t, int times) {
    for (int i = 0; i < times; ++i) {
      MatrixRow row;
      row.token = "that";
      row.gold = gold;
      row.suggestions = {e, t};
      tune.rows.push_back(row);
    }
  };
  add("CS", "DT", "CS", 19);
  add("DT", "DT", "CS", 36);
  add("QL", "DT", "CS", 1);
  add("WPR", "DT", "CS", 2);
  add("NN", "NN", "NN", 40);
  tune.utterance_lengths = {tune.rows.size()};
  return tune;
}

} // namespace

TEST_CASE("pair table: agreeing and always-right taggers give point masses") {
  auto matrix = matrix_of({"a", "b"}, {{"w1", "X", "X", "X"},
                                       {"w2", "Y", "Y", "Y"},
                                       {"w3", "X", "X", "X"}});
  auto table = PairTable::from_matrix(matrix);
  const auto* dist = table.pair_dist(0, 1, "X", "X");
  REQUIRE(dist != nullptr);
  CHECK(dist->total == 2);
  CHECK(dist->prob("X") == 1.0);
  CHECK(table.pair_dist(0, 1, "Y", "Y")->prob("Y") == 1.0);
  CHECK(table.pair_dist(0, 1, "X", "Y") == nullptr);
}

TEST_CASE("pair table: the (DT, CS) conditional distribution to 4 decimals") {
  auto table = PairTable::from_matrix(conjunction_fixture());
  const auto* dist = table.pair_dist(0, 1, "DT", "CS");
  REQUIRE(dist != nullptr);
  CHECK(dist->total == 58);
  CHECK(format_double(dist->prob("CS"), 4) == "0.3276");
  CHECK(format_double(dist->prob("DT"), 4) == "0.6207");
  CHECK(format_double(dist->prob("QL"), 4) == "0.0172");
  CHECK(format_double(dist->prob("WPR"), 4) == "0.0345");
}

TEST_CASE("pair table: every stored distribution sums to 1") {
  SynthSpec spec;
  spec.tokens = 4000;
  spec.seed = 19;
  spec.tagger_accuracies = {0.9, 0.85, 0.8};
  auto synth = generate_synthetic(spec);
  auto matrix = align_outputs(synth.gold, synth.columns, synth.tagger_ids);
  auto table = PairTable::from_matrix(matrix);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      for (const auto& row : matrix.rows) {
        const auto* dist =
            table.pair_dist(i, j, row.suggestions[i], row.suggestions[j]);
        REQUIRE(dist != nullptr);
        double sum = 0.0;
        for (const auto& [tag, p] : dist->probabilities()) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
    for (const auto& row : matrix.rows) {
      const auto* single = table.single_dist(i, row.suggestions[i]);
      REQUIRE(single != nullptr);
      double sum = 0.0;
      for (const auto& [tag, p] : single->probabilities()) sum += p;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("pair table: needs two taggers and gold") {
  auto one = matrix_of({"a"}, {{"w", "X", "X"}});
  CHECK_THROWS_AS(PairTable::from_matrix(one), std::invalid_argument);
  auto no_gold = matrix_of({"a", "b"}, {{"w", "-", "X", "Y"}});
  CHECK_THROWS_AS(PairTable::from_matrix(no_gold), std::invalid_argument);
}

TEST_CASE("tagpair: a tag suggested by neither tagger can win") {
  // The pair (X, Y) was always wrong on tune with gold Z.
  auto tune = matrix_of({"a", "b"}, {{"w", "Z", "X", "Y"},
                                     {"w", "Z", "X", "Y"},
                                     {"w", "Z", "X", "Y"},
                                     {"w", "Q", "Q", "Q"}});
  auto table = PairTable::from_matrix(tune);
  auto winners = winners_tagpair(std::vector<Tag>{"X", "Y"}, table);
  CHECK(winners == std::vector<Tag>{"Z"});
}

TEST_CASE("tagpair: unanimous reliable taggers keep their tag") {
  auto tune = matrix_of({"a", "b", "c"}, {{"w", "X", "X", "X", "X"},
                                          {"w", "Y", "Y", "Y", "Y"},
                                          {"w", "X", "X", "X", "X"}});
  auto table = PairTable::from_matrix(tune);
  Rng rng(4);
  CHECK(vote_tagpair(std::vector<Tag>{"X", "X", "X"}, table, rng) == "X");
  CHECK(vote_tagpair(std::vector<Tag>{"Y", "Y", "Y"}, table, rng) == "Y");
}

TEST_CASE("tagpair: observed pairs contribute unit mass in total") {
  SynthSpec spec;
  spec.tokens = 3000;
  spec.seed = 5;
  spec.tagger_accuracies = {0.9, 0.8, 0.85, 0.7};
  auto synth = generate_synthetic(spec);
  auto matrix = align_outputs(synth.gold, synth.columns, synth.tagger_ids);
  auto table = PairTable::from_matrix(matrix);
  // Every row's pairs were observed (the table was trained on these rows),
  // so the total vote mass per row is C(4,2) = 6.
  for (std::size_t r = 0; r < 200; ++r) {
    const auto& s = matrix.rows[r].suggestions;
    double mass = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        const auto* dist = table.pair_dist(i, j, s[i], s[j]);
        REQUIRE(dist != nullptr);
        for (const auto& [tag, p] : dist->probabilities()) mass += p;
      }
    }
    CHECK(mass == doctest::Approx(6.0).epsilon(1e-6));
  }
}

TEST_CASE("tagpair: scores match a naive pair loop on a 60-row tune") {
  Rng rng(606);
  TaggerMatrix tune;
  tune.tagger_ids = {"a", "b", "c", "d"};
  const char* tags[] = {"X", "Y", "Z"};
  for (int r = 0; r < 60; ++r) {
    MatrixRow row;
    row.token = "w";
    row.gold = tags[rng.below(3)];
    for (int i = 0; i < 4; ++i) row.suggestions.push_back(tags[rng.below(3)]);
    tune.rows.push_back(row);
  }
  tune.utterance_lengths = {tune.rows.size()};
  auto table = PairTable::from_matrix(tune);

  for (int round = 0; round < 200; ++round) {
    std::vector<Tag> s;
    for (int i = 0; i < 4; ++i) s.push_back(tags[rng.below(3)]);

    // Naive recomputation straight from the matrix rows.
    std::map<Tag, double> score;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        std::map<Tag, std::int64_t> counts;
        std::int64_t total = 0;
        for (const auto& row : tune.rows) {
          if (row.suggestions[i] == s[i] && row.suggestions[j] == s[j]) {
            ++counts[*row.gold];
            ++total;
          }
        }
        if (total > 0) {
          for (const auto& [tag, c] : counts) score[tag] += double(c) / double(total);
        } else {
          for (std::size_t side = 0; side < 2; ++side) {
            std::size_t k = side == 0 ? i : j;
            std::map<Tag, std::int64_t> sc;
            std::int64_t st = 0;
            for (const auto& row : tune.rows) {
              if (row.suggestions[k] == s[k]) {
                ++sc[*row.gold];
                ++st;
              }
            }
            for (const auto& [tag, c] : sc) {
              score[tag] += 0.5 * double(c) / double(st);
            }
          }
        }
      }
    }
    Tag naive_best;
    double best = -1;
    for (const auto& [tag, v] : score) {
      if (v > best) {
        naive_best = tag;
        best = v;
      }
    }
    auto winners = winners_tagpair(s, table);
    REQUIRE_FALSE(winners.empty());
    CHECK(std::find(winners.begin(), winners.end(), naive_best) != winners.end());
    // And the top score agrees.
    double mass = 0.0;
    for (const auto& [tag, v] : score) mass = std::max(mass, v);
    CHECK(mass == doctest::Approx(best));
  }
}

TEST_CASE("tagpair: swapping the tagger order leaves row winners unchanged") {
  SynthSpec spec;
  spec.tokens = 3000;
  spec.seed = 41;
  spec.tagger_accuracies = {0.9, 0.8, 0.85};
  auto synth = generate_synthetic(spec);
  auto matrix = align_outputs(synth.gold, synth.columns, synth.tagger_ids);
  auto split = split_matrix(matrix);

  auto table = PairTable::from_matrix(split.tune);
  std::vector<std::size_t> perm = {2, 0, 1};
  auto tune_perm = project(split.tune, perm);
  auto test_perm = project(split.test, perm);
  auto table_perm = PairTable::from_matrix(tune_perm);

  for (std::size_t r = 0; r < split.test.rows.size(); ++r) {
    auto winners = winners_tagpair(split.test.rows[r].suggestions, table);
    auto winners_p = winners_tagpair(test_perm.rows[r].suggestions, table_perm);
    CHECK(winners == winners_p);
  }
}

TEST_CASE("tagpair: with two taggers the winner is the pair distribution argmax") {
  auto table = PairTable::from_matrix(conjunction_fixture());
  auto winners = winners_tagpair(std::vector<Tag>{"DT", "CS"}, table);
  CHECK(winners == std::vector<Tag>{"DT"}); // 0.6207 dominates
}

TEST_CASE("tagpair: empty score mass falls through to majority") {
  auto tune = matrix_of({"a", "b"}, {{"w", "X", "X", "X"}});
  auto table = PairTable::from_matrix(tune);
  // Neither suggestion was ever seen: no pair entry, no single entries.
  CHECK(winners_tagpair(std::vector<Tag>{"P", "Q"}, table).empty());
  Rng rng(11);
  Tag chosen = vote_tagpair(std::vector<Tag>{"P", "Q"}, table, rng);
  CHECK((chosen == "P" || chosen == "Q"));
}

TEST_CASE("tagpair: min pair count falls back to singles for thin pairs") {
  auto tune = matrix_of({"a", "b"}, {{"w", "Z", "X", "Y"},
                                     {"w", "X", "X", "X"},
                                     {"w", "X", "X", "X"},
                                     {"w", "X", "X", "X"},
                                     {"w", "Y", "W", "Y"},
                                     {"w", "Y", "W", "Y"}});
  auto table = PairTable::from_matrix(tune);
  // With the default threshold the lone (X, Y) observation dictates Z.
  CHECK(winners_tagpair(std::vector<Tag>{"X", "Y"}, table, 1) ==
        std::vector<Tag>{"Z"});
  // Requiring two observations forces the single-tagger fallback:
  // a's X history is {X: 3/4, Z: 1/4}, b's Y history {Y: 2/3, Z: 1/3},
  // so X scores 0.375 against Y 0.333 and Z 0.292.
  CHECK(winners_tagpair(std::vector<Tag>{"X", "Y"}, table, 2) ==
        std::vector<Tag>{"X"});
}

TEST_CASE("pair table: write/read round trip") {
  auto table = PairTable::from_matrix(conjunction_fixture());
  std::ostringstream out;
  table.write(out);
  std::istringstream in(out.str());
  auto again = PairTable::read(in);
  REQUIRE(again.tagger_ids() == table.tagger_ids());
  const auto* dist = again.pair_dist(0, 1, "DT", "CS");
  REQUIRE(dist != nullptr);
  CHECK(dist->total == 58);
  CHECK(dist->prob("CS") == doctest::Approx(19.0 / 58.0));
  const auto* single = again.single_dist(1, "CS");
  REQUIRE(single != nullptr);
  CHECK(single->total == 58);
}
