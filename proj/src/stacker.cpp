#include "combitag/stacker.hpp"

#include "combitag/features.hpp"

#include <stdexcept>

namespace combitag {

StackVariant stack_variant_from_string(const std::string& s) {
  if (s == "tags") return StackVariant::tags;
  if (s == "tags-word") return StackVariant::tags_word;
  if (s == "tags-context") return StackVariant::tags_context;
  throw std::invalid_argument("unknown stack variant: " + s);
}

std::string to_string(StackVariant variant) {
  switch (variant) {
    case StackVariant::tags: return "tags";
    case StackVariant::tags_word: return "tags-word";
    case StackVariant::tags_context: return "tags-context";
  }
  return "?";
}

std::vector<std::string> stack_schema(StackVariant variant,
                                      const std::vector<std::string>& tagger_ids) {
  std::vector<std::string> schema;
  if (variant == StackVariant::tags_context) {
    for (const auto& id : tagger_ids) schema.push_back(id + "-1");
  }
  for (const auto& id : tagger_ids) schema.push_back(id);
  if (variant == StackVariant::tags_word) schema.push_back("word");
  if (variant == StackVariant::tags_context) {
    for (const auto& id : tagger_ids) schema.push_back(id + "+1");
  }
  return schema;
}

namespace {

// Utterance index of every row plus its offset, for context lookups.
struct RowLayout {
  std::vector<std::size_t> utterance_of;
  std::vector<std::size_t> offset;
};

RowLayout layout_of(const TaggerMatrix& matrix) {
  RowLayout layout;
  layout.utterance_of.reserve(matrix.rows.size());
  layout.offset.reserve(matrix.rows.size());
  for (std::size_t u = 0; u < matrix.utterance_lengths.size(); ++u) {
    for (std::size_t i = 0; i < matrix.utterance_lengths[u]; ++i) {
      layout.utterance_of.push_back(u);
      layout.offset.push_back(i);
    }
  }
  if (layout.utterance_of.size() != matrix.rows.size()) {
    throw std::invalid_argument("stacker: utterance lengths do not cover rows");
  }
  return layout;
}

std::vector<std::string> instance_at(const TaggerMatrix& matrix,
                                     const RowLayout& layout, std::size_t row,
                                     StackVariant variant) {
  const std::size_t n = matrix.n_taggers();
  std::vector<std::string> f;
  const std::size_t u = layout.utterance_of[row];
  const std::size_t i = layout.offset[row];
  const std::size_t len = matrix.utterance_lengths[u];
  if (variant == StackVariant::tags_context) {
    f.reserve(3 * n);
    for (std::size_t t = 0; t < n; ++t) {
      f.push_back(i > 0 ? matrix.rows[row - 1].suggestions[t] : kOutOfBounds);
    }
  } else {
    f.reserve(variant == StackVariant::tags_word ? n + 1 : n);
  }
  for (std::size_t t = 0; t < n; ++t) f.push_back(matrix.rows[row].suggestions[t]);
  if (variant == StackVariant::tags_word) f.push_back(matrix.rows[row].token);
  if (variant == StackVariant::tags_context) {
    for (std::size_t t = 0; t < n; ++t) {
      f.push_back(i + 1 < len ? matrix.rows[row + 1].suggestions[t] : kOutOfBounds);
    }
  }
  return f;
}

} // namespace

std::vector<std::string> stack_instance(const TaggerMatrix& matrix,
                                        std::size_t row, StackVariant variant) {
  return instance_at(matrix, layout_of(matrix), row, variant);
}

std::vector<Case> build_stack_cases(const TaggerMatrix& matrix,
                                    StackVariant variant) {
  if (!matrix.has_gold()) {
    throw std::invalid_argument("build_stack_cases: matrix has no gold tags");
  }
  const RowLayout layout = layout_of(matrix);
  std::vector<Case> cases;
  cases.reserve(matrix.rows.size());
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    cases.push_back({instance_at(matrix, layout, r, variant), *matrix.rows[r].gold});
  }
  return cases;
}

double disagreement_fraction(const TaggerMatrix& matrix) {
  if (matrix.rows.empty()) {
    throw std::invalid_argument("disagreement_fraction: empty matrix");
  }
  std::size_t disagree = 0;
  for (const auto& row : matrix.rows) {
    for (std::size_t t = 1; t < row.suggestions.size(); ++t) {
      if (row.suggestions[t] != row.suggestions[0]) {
        ++disagree;
        break;
      }
    }
  }
  return static_cast<double>(disagree) / static_cast<double>(matrix.rows.size());
}

CaseBase train_stack_mbl(const TaggerMatrix& tune, StackVariant variant) {
  const Metric metric = variant == StackVariant::tags_context
                            ? Metric::ig_overlap
                            : Metric::overlap;
  return CaseBase::build(stack_schema(variant, tune.tagger_ids),
                         build_stack_cases(tune, variant), metric);
}

std::vector<Tag> apply_stack_mbl(const CaseBase& base, StackVariant variant,
                                 const TaggerMatrix& test, Exec exec) {
  const RowLayout layout = layout_of(test);
  std::vector<Tag> out(test.rows.size());
  for_each_index(exec, test.rows.size(), [&](std::size_t r) {
    out[r] = base.classify(instance_at(test, layout, r, variant)).label;
  });
  return out;
}

DecisionTree train_stack_tree(const TaggerMatrix& tune, StackVariant variant,
                              double prune_confidence) {
  if (variant == StackVariant::tags_word) {
    throw UnsupportedVariantError(
        "stack-tree does not support the tags-word variant: the word feature "
        "has too many values for multiway splits");
  }
  DecisionTree tree = DecisionTree::induce(build_stack_cases(tune, variant));
  return tree.pruned(prune_confidence);
}

std::vector<Tag> apply_stack_tree(const DecisionTree& tree, StackVariant variant,
                                  const TaggerMatrix& test, Exec exec) {
  const RowLayout layout = layout_of(test);
  std::vector<Tag> out(test.rows.size());
  for_each_index(exec, test.rows.size(), [&](std::size_t r) {
    out[r] = tree.classify(instance_at(test, layout, r, variant));
  });
  return out;
}

} // namespace combitag
