#include "combitag/combiner.hpp"

#include "combitag/eval.hpp"
#include "combitag/pairwise.hpp"
#include "combitag/voting.hpp"

#include <algorithm>
#include <stdexcept>

namespace combitag {

namespace {

class VotingCombiner final : public Combiner {
public:
  explicit VotingCombiner(VotingMethod method) : method_(method) {}

  void train(const TaggerMatrix& tune) override {
    table_ = WeightTable::from_matrix(tune);
  }

  std::vector<Tag> apply(const TaggerMatrix& test, std::uint64_t seed,
                         Exec exec) const override {
    return combine_voting(test, table_, method_, seed, exec);
  }

private:
  VotingMethod method_;
  WeightTable table_;
};

class TagPairCombiner final : public Combiner {
public:
  explicit TagPairCombiner(std::int64_t min_pair_count)
      : min_pair_count_(min_pair_count) {}

  void train(const TaggerMatrix& tune) override {
    table_ = PairTable::from_matrix(tune);
  }

  std::vector<Tag> apply(const TaggerMatrix& test, std::uint64_t seed,
                         Exec exec) const override {
    return combine_tagpair(test, table_, seed, min_pair_count_, exec);
  }

  const PairTable& table() const { return table_; }

private:
  std::int64_t min_pair_count_;
  PairTable table_;
};

class StackMblCombiner final : public Combiner {
public:
  explicit StackMblCombiner(StackVariant variant) : variant_(variant) {}

  void train(const TaggerMatrix& tune) override {
    base_ = train_stack_mbl(tune, variant_);
  }

  std::vector<Tag> apply(const TaggerMatrix& test, std::uint64_t seed,
                         Exec exec) const override {
    (void)seed; // classification is deterministic
    return apply_stack_mbl(*base_, variant_, test, exec);
  }

private:
  StackVariant variant_;
  std::optional<CaseBase> base_;
};

class StackTreeCombiner final : public Combiner {
public:
  StackTreeCombiner(StackVariant variant, double prune_confidence)
      : variant_(variant), prune_confidence_(prune_confidence) {}

  void train(const TaggerMatrix& tune) override {
    tree_ = train_stack_tree(tune, variant_, prune_confidence_);
  }

  std::vector<Tag> apply(const TaggerMatrix& test, std::uint64_t seed,
                         Exec exec) const override {
    (void)seed;
    return apply_stack_tree(*tree_, variant_, test, exec);
  }

private:
  StackVariant variant_;
  double prune_confidence_;
  std::optional<DecisionTree> tree_;
};

} // namespace

bool combiner_needs_training_data(const std::string& method) {
  return method != "majority";
}

std::unique_ptr<Combiner> make_combiner(const CombinerSpec& spec) {
  if (spec.method == "majority" || spec.method == "totprec" ||
      spec.method == "tagprec" || spec.method == "precrec") {
    return std::make_unique<VotingCombiner>(voting_method_from_string(spec.method));
  }
  if (spec.method == "tagpair") {
    return std::make_unique<TagPairCombiner>(spec.min_pair_count);
  }
  if (spec.method == "stack-mbl") {
    return std::make_unique<StackMblCombiner>(spec.variant);
  }
  if (spec.method == "stack-tree") {
    if (spec.variant == StackVariant::tags_word) {
      throw UnsupportedVariantError(
          "stack-tree does not support the tags-word variant: the word feature "
          "has too many values for multiway splits");
    }
    return std::make_unique<StackTreeCombiner>(spec.variant, spec.prune_confidence);
  }
  throw std::invalid_argument("unknown combination method: " + spec.method);
}

std::vector<SweepRow> sweep_subsets(const TaggerMatrix& test,
                                    const TaggerMatrix& tune,
                                    const CombinerSpec& spec, std::uint64_t seed,
                                    Exec exec) {
  const std::size_t n = test.n_taggers();
  if (n < 2) throw std::invalid_argument("sweep: need at least 2 taggers");
  if (tune.tagger_ids != test.tagger_ids) {
    throw std::invalid_argument("sweep: tune/test tagger ids differ");
  }
  const std::vector<Tag> gold = gold_column(test);

  std::vector<double> single_acc(n);
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    SweepRow row;
    row.subset = {i};
    row.label = test.tagger_ids[i];
    row.test_accuracy = accuracy(suggestion_column(test, i), gold);
    single_acc[i] = row.test_accuracy;
    rows.push_back(std::move(row));
  }

  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(i);
    }
    if (subset.size() < 2) continue;
    SweepRow row;
    row.subset = subset;
    for (std::size_t i : subset) row.label += test.tagger_ids[i];

    auto combiner = make_combiner(spec);
    combiner->train(project(tune, subset));
    const auto combined = combiner->apply(project(test, subset), seed, exec);
    row.test_accuracy = accuracy(combined, gold);

    double avg = 0.0;
    double best = 0.0;
    std::size_t best_i = subset[0];
    for (std::size_t i : subset) {
      avg += single_acc[i];
      if (single_acc[i] > best) {
        best = single_acc[i];
        best_i = i;
      }
    }
    avg /= static_cast<double>(subset.size());
    row.component_average = avg;
    row.gain = row.test_accuracy - avg;
    const double err_best = 1.0 - best;
    row.error_reduction =
        err_best <= 0.0
            ? 0.0
            : 100.0 * (err_best - (1.0 - row.test_accuracy)) / err_best;
    row.best_component = test.tagger_ids[best_i];
    rows.push_back(std::move(row));
  }

  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.test_accuracy < b.test_accuracy;
  });
  return rows;
}

} // namespace combitag
