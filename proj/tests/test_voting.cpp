#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "combitag/rng.hpp"
#include "combitag/synth.hpp"
#include "combitag/voting.hpp"

#include "test_support.hpp"

#include <algorithm>
#include <map>

using namespace combitag;
using combitag::testing::chi2_crit_p01;
using combitag::testing::matrix_of;

namespace {

std::vector<Tag> tags_of(std::initializer_list<const char*> list) {
  std::vector<Tag> out;
  for (const char* t : list) out.emplace_back(t);
  return out;
}

// A weight table with chosen overall accuracies: tagger i is drawn correct
// with probability acc[i] on a two-tag tune set.
WeightTable table_with_accuracies(const std::vector<double>& acc) {
  TaggerMatrix tune;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    tune.tagger_ids.push_back("g" + std::to_string(i));
  }
  const int rows = 1000;
  for (int r = 0; r < rows; ++r) {
    MatrixRow row;
    row.token = "w";
    row.gold = "A";
    for (double a : acc) {
      row.suggestions.push_back(r < a * rows ? "A" : "B");
    }
    tune.rows.push_back(std::move(row));
  }
  tune.utterance_lengths = {tune.rows.size()};
  return WeightTable::from_matrix(tune);
}

} // namespace

TEST_CASE("weight table: always-correct tagger has accuracy and precision 1") {
  auto matrix = matrix_of({"a", "b"}, {{"w1", "X", "X", "X"},
                                       {"w2", "Y", "Y", "X"},
                                       {"w3", "X", "X", "Y"}});
  auto table = WeightTable::from_matrix(matrix);
  CHECK(table.overall_accuracy(0) == 1.0);
  CHECK(table.precision(0, "X") == 1.0);
  CHECK(table.precision(0, "Y") == 1.0);
  CHECK(table.overall_accuracy(1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("weight table: precision and recall by direct count") {
  // Tagger says X 4 times, 3 of them right; gold has X 6 times.
  TaggerMatrix tune;
  tune.tagger_ids = {"t"};
  auto add = [&tune](const char* gold, const char* said) {
    MatrixRow row;
    row.token = "w";
    row.gold = gold;
    row.suggestions = {said};
    tune.rows.push_back(row);
  };
  add("X", "X");
  add("X", "X");
  add("X", "X");
  add("Y", "X");
  add("X", "Y");
  add("X", "Y");
  add("X", "Y");
  add("Y", "Y");
  tune.utterance_lengths = {tune.rows.size()};
  auto table = WeightTable::from_matrix(tune);
  CHECK(table.precision(0, "X") == doctest::Approx(0.75));
  CHECK(table.recall(0, "X") == doctest::Approx(0.5));
}

TEST_CASE("weight table: missing gold is an error") {
  auto matrix = matrix_of({"a"}, {{"w", "-", "X"}});
  CHECK_THROWS_AS(WeightTable::from_matrix(matrix), std::invalid_argument);
}

TEST_CASE("weight table: matches an independent recount on generated data") {
  SynthSpec spec;
  spec.tokens = 5000;
  spec.seed = 31;
  spec.tagger_accuracies = {0.9, 0.8, 0.85};
  auto synth = generate_synthetic(spec);
  auto matrix = align_outputs(synth.gold, synth.columns, synth.tagger_ids);
  auto table = WeightTable::from_matrix(matrix);

  for (std::size_t i = 0; i < 3; ++i) {
    std::map<Tag, std::int64_t> said, hit, gold;
    std::int64_t correct = 0;
    for (const auto& row : matrix.rows) {
      ++said[row.suggestions[i]];
      ++gold[*row.gold];
      if (row.suggestions[i] == *row.gold) {
        ++hit[row.suggestions[i]];
        ++correct;
      }
    }
    CHECK(table.overall_accuracy(i) ==
          doctest::Approx(double(correct) / double(matrix.rows.size())));
    for (const auto& [tag, n] : said) {
      CHECK(table.precision(i, tag) == doctest::Approx(double(hit[tag]) / double(n)));
    }
    for (const auto& [tag, n] : gold) {
      CHECK(table.recall(i, tag) == doctest::Approx(double(hit[tag]) / double(n)));
    }
  }
}

TEST_CASE("majority: plain counts") {
  Rng rng(1);
  CHECK(vote_majority(tags_of({"X", "X", "X", "Y"}), rng) == "X");
  CHECK(winners_majority(tags_of({"X", "X", "Y", "Y"})) ==
        std::vector<Tag>{"X", "Y"});
  CHECK(winners_majority(tags_of({"X", "Y", "Z", "W"})) ==
        std::vector<Tag>{"W", "X", "Y", "Z"});
}

TEST_CASE("majority: two-way ties split about 50/50 over seeds") {
  auto suggestions = tags_of({"X", "X", "Y", "Y"});
  std::map<Tag, int> counts;
  const int trials = 10000;
  for (int seed = 0; seed < trials; ++seed) {
    Rng rng = row_rng(seed, 0);
    ++counts[vote_majority(suggestions, rng)];
  }
  REQUIRE(counts.size() == 2);
  {
    Rng a = row_rng(123, 0);
    Rng b = row_rng(123, 0);
    CHECK(vote_majority(suggestions, a) == vote_majority(suggestions, b));
  }
  // Chi-square goodness of fit against uniform, p > 0.01.
  double chi2 = 0.0;
  for (const auto& [tag, n] : counts) {
    double e = trials / 2.0;
    chi2 += (n - e) * (n - e) / e;
  }
  CHECK(chi2 < chi2_crit_p01(1));
}

TEST_CASE("majority: four-way ties are uniform over seeds") {
  auto suggestions = tags_of({"X", "Y", "Z", "W"});
  std::map<Tag, int> counts;
  const int trials = 10000;
  for (int seed = 0; seed < trials; ++seed) {
    Rng rng = row_rng(seed, 7);
    ++counts[vote_majority(suggestions, rng)];
  }
  REQUIRE(counts.size() == 4);
  double chi2 = 0.0;
  for (const auto& [tag, n] : counts) {
    double e = trials / 4.0;
    chi2 += (n - e) * (n - e) / e;
  }
  CHECK(chi2 < chi2_crit_p01(3));
}

TEST_CASE("tot precision: strong taggers can be outvoted") {
  auto table1 = table_with_accuracies({0.9, 0.9, 0.6, 0.6});
  CHECK(winners_tot_precision(tags_of({"X", "Y", "Y", "Y"}), table1) ==
        std::vector<Tag>{"Y"}); // 2.1 beats 0.9
  auto table2 = table_with_accuracies({0.97, 0.5, 0.5, 0.5});
  CHECK(winners_tot_precision(tags_of({"X", "Y", "Y", "Y"}), table2) ==
        std::vector<Tag>{"Y"}); // 1.5 beats 0.97
}

TEST_CASE("tot precision: equal accuracies reduce to majority") {
  auto table = table_with_accuracies({0.8, 0.8, 0.8, 0.8});
  Rng rng(3);
  for (int round = 0; round < 200; ++round) {
    std::vector<Tag> suggestions;
    for (int i = 0; i < 4; ++i) {
      suggestions.push_back(Tag(1, static_cast<char>('A' + rng.below(3))));
    }
    CHECK(winners_tot_precision(suggestions, table) ==
          winners_majority(suggestions));
  }
}

TEST_CASE("tag precision: one precise tagger beats three imprecise ones") {
  // Precisions: tagger 0 on X = 0.99; taggers 1..3 on Y = 0.3.
  TaggerMatrix tune;
  tune.tagger_ids = {"a", "b", "c", "d"};
  auto add = [&tune](const char* gold, std::vector<const char*> said) {
    MatrixRow row;
    row.token = "w";
    row.gold = gold;
    for (const char* s : said) row.suggestions.push_back(s);
    tune.rows.push_back(row);
  };
  for (int i = 0; i < 99; ++i) add("X", {"X", "Y", "Y", "Y"});
  add("Z", {"X", "Y", "Y", "Y"});
  for (int i = 0; i < 200; ++i) add("Z", {"Z", "Y", "Y", "Y"});
  // Tagger a: X suggested 100 times, 99 right. Taggers b-d: Y 300 times,
  // 99... actually 0 right on Y; give them some hits.
  for (int i = 0; i < 90; ++i) add("Y", {"Z", "Y", "Y", "Y"});
  tune.utterance_lengths = {tune.rows.size()};
  auto table = WeightTable::from_matrix(tune);
  CHECK(table.precision(0, "X") == doctest::Approx(0.99));
  CHECK(table.precision(1, "Y") == doctest::Approx(90.0 / 390.0).epsilon(1e-6));

  auto winners = winners_tag_precision(tags_of({"X", "Y", "Y", "Y"}), table);
  CHECK(winners == std::vector<Tag>{"X"}); // 0.99 > 3 * 0.23
}

TEST_CASE("tag precision: scores match a naive recomputation on random rows") {
  SynthSpec spec;
  spec.tokens = 3000;
  spec.seed = 77;
  spec.tagger_accuracies = {0.85, 0.9, 0.7};
  auto synth = generate_synthetic(spec);
  auto matrix = align_outputs(synth.gold, synth.columns, synth.tagger_ids);
  auto table = WeightTable::from_matrix(matrix);

  for (std::size_t r = 0; r < 1000 && r < matrix.rows.size(); ++r) {
    const auto& suggestions = matrix.rows[r].suggestions;
    std::map<Tag, double> score;
    for (std::size_t i = 0; i < suggestions.size(); ++i) {
      score[suggestions[i]] += table.precision(i, suggestions[i]);
    }
    Tag best;
    double best_score = -1;
    for (const auto& [tag, s] : score) {
      if (s > best_score) {
        best = tag;
        best_score = s;
      }
    }
    auto winners = winners_tag_precision(suggestions, table);
    // The naive recomputation may differ in float association; agreement on
    // the winner is what matters here.
    CHECK(std::find(winners.begin(), winners.end(), best) != winners.end());
  }
}

TEST_CASE("precision-recall: worked example") {
  // precision .8 everywhere; recall(X) = .9, recall(Y) = .5 for all taggers.
  TaggerMatrix tune;
  tune.tagger_ids = {"a", "b", "c", "d"};
  auto add = [&tune](const char* gold, const char* said, int times) {
    for (int i = 0; i < times; ++i) {
      MatrixRow row;
      row.token = "w";
      row.gold = gold;
      row.suggestions = {said, said, said, said};
      tune.rows.push_back(row);
    }
  };
  // Per tagger: X said 45 times (36 right), Y said 40 (32 right).
  // Gold: X 40 times -> recall(X) = 36/40 = .9; Y 64 -> recall(Y) = 32/64 = .5.
  add("X", "X", 36);
  add("Y", "X", 9);
  add("Y", "Y", 32);
  add("Z", "Y", 8);
  add("Y", "Z", 23);
  add("X", "Z", 4);
  tune.utterance_lengths = {tune.rows.size()};
  auto table = WeightTable::from_matrix(tune);
  REQUIRE(table.precision(0, "X") == doctest::Approx(0.8));
  REQUIRE(table.precision(0, "Y") == doctest::Approx(0.8));
  REQUIRE(table.recall(0, "X") == doctest::Approx(0.9));
  REQUIRE(table.recall(0, "Y") == doctest::Approx(0.5));

  // score(X) = .8 + .8 + (1-.9) + (1-.9) = 1.8 < score(Y) = .8 + .8 + .5 + .5 = 2.6
  auto winners = winners_precision_recall(tags_of({"X", "X", "Y", "Y"}), table);
  CHECK(winners == std::vector<Tag>{"Y"});
}

TEST_CASE("precision-recall: unanimous suggestions have no opposing term") {
  auto table = table_with_accuracies({0.9, 0.8, 0.7, 0.6});
  CHECK(winners_precision_recall(tags_of({"A", "A", "A", "A"}), table) ==
        std::vector<Tag>{"A"});
}

TEST_CASE("precision-recall: recall 1 everywhere reduces to tag precision") {
  // Perfect taggers on tune have precision = recall = 1 for seen tags and
  // fall back to overall accuracy (1.0) otherwise; build an imperfect
  // variant where recall is forced to 1 by construction: every gold tag is
  // always found by every tagger.
  TaggerMatrix tune;
  tune.tagger_ids = {"a", "b"};
  auto add = [&tune](const char* gold, const char* s0, const char* s1) {
    MatrixRow row;
    row.token = "w";
    row.gold = gold;
    row.suggestions = {s0, s1};
    tune.rows.push_back(row);
  };
  // Gold is always X; both taggers always recall X... tagger b sometimes
  // says Y on non-X rows -> impossible without extra gold tags, so instead:
  // recall(X)=1 for both; Y never appears in gold, so recall(Y) falls back
  // to overall accuracy -- not 1. Force taggers to always suggest gold when
  // it is Y as well.
  for (int i = 0; i < 10; ++i) add("X", "X", "X");
  for (int i = 0; i < 10; ++i) add("Y", "Y", "Y");
  // Extra rows keep precision below 1 without hurting recall: impossible
  // for binary tags, so accept precision 1 here; the reduction is about
  // equal winner sets, which stays informative.
  tune.utterance_lengths = {tune.rows.size()};
  auto table = WeightTable::from_matrix(tune);
  REQUIRE(table.recall(0, "X") == 1.0);
  REQUIRE(table.recall(0, "Y") == 1.0);

  Rng rng(5);
  for (int round = 0; round < 200; ++round) {
    std::vector<Tag> suggestions = {rng.below(2) ? "X" : "Y",
                                    rng.below(2) ? "X" : "Y"};
    CHECK(winners_precision_recall(suggestions, table) ==
          winners_tag_precision(suggestions, table));
  }
}

TEST_CASE("voting algebra: unanimity, membership, permutation invariance") {
  Rng rng(2024);
  const std::vector<double> accs = {0.93, 0.81, 0.77, 0.88};
  auto table = table_with_accuracies(accs);
  for (int round = 0; round < 2000; ++round) {
    std::vector<Tag> suggestions;
    for (int i = 0; i < 4; ++i) {
      suggestions.push_back(Tag(1, static_cast<char>('A' + rng.below(4))));
    }
    // Unanimity.
    std::vector<Tag> unanimous(4, suggestions[0]);
    for (auto* fn : {&winners_majority}) {
      CHECK((*fn)(unanimous) == std::vector<Tag>{suggestions[0]});
    }
    CHECK(winners_tot_precision(unanimous, table) ==
          std::vector<Tag>{suggestions[0]});
    CHECK(winners_tag_precision(unanimous, table) ==
          std::vector<Tag>{suggestions[0]});
    CHECK(winners_precision_recall(unanimous, table) ==
          std::vector<Tag>{suggestions[0]});

    // Winner membership.
    auto in_suggestions = [&suggestions](const std::vector<Tag>& winners) {
      for (const auto& w : winners) {
        if (std::find(suggestions.begin(), suggestions.end(), w) ==
            suggestions.end()) {
          return false;
        }
      }
      return true;
    };
    CHECK(in_suggestions(winners_majority(suggestions)));
    CHECK(in_suggestions(winners_tot_precision(suggestions, table)));
    CHECK(in_suggestions(winners_tag_precision(suggestions, table)));
    CHECK(in_suggestions(winners_precision_recall(suggestions, table)));

    // Permutation invariance: same winner sets after reordering taggers
    // together with their weights.
    std::vector<std::size_t> perm = {0, 1, 2, 3};
    for (std::size_t i = 3; i > 0; --i) {
      std::swap(perm[i], perm[rng.below(i + 1)]);
    }
    std::vector<Tag> permuted;
    std::vector<double> permuted_accs;
    for (std::size_t i : perm) {
      permuted.push_back(suggestions[i]);
      permuted_accs.push_back(accs[i]);
    }
    auto permuted_table = table_with_accuracies(permuted_accs);
    CHECK(winners_majority(permuted) == winners_majority(suggestions));
    CHECK(winners_tot_precision(permuted, permuted_table) ==
          winners_tot_precision(suggestions, table));
  }
}

TEST_CASE("majority: monotone in extra votes for the unique winner") {
  Rng rng(9);
  for (int round = 0; round < 500; ++round) {
    std::vector<Tag> suggestions;
    for (int i = 0; i < 4; ++i) {
      suggestions.push_back(Tag(1, static_cast<char>('A' + rng.below(3))));
    }
    auto winners = winners_majority(suggestions);
    if (winners.size() != 1) continue;
    auto extended = suggestions;
    extended.push_back(winners[0]);
    CHECK(winners_majority(extended) == winners);
  }
}

TEST_CASE("combine_voting: rejects mismatched tagger ids") {
  auto matrix = matrix_of({"a", "b"}, {{"w", "X", "X", "Y"}});
  auto other = matrix_of({"a", "c"}, {{"w", "X", "X", "Y"}});
  auto table = WeightTable::from_matrix(other);
  CHECK_THROWS_AS(
      combine_voting(matrix, table, VotingMethod::majority, 1, Exec::serial),
      std::invalid_argument);
}
