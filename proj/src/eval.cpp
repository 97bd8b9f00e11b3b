#include "combitag/eval.hpp"

#include "combitag/rng.hpp"
#include "combitag/util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace combitag {

double accuracy(std::span<const Tag> pred, std::span<const Tag> gold) {
  if (pred.size() != gold.size()) {
    throw std::invalid_argument("accuracy: length mismatch (" +
                                std::to_string(pred.size()) + " vs " +
                                std::to_string(gold.size()) + ")");
  }
  if (pred.empty()) throw std::invalid_argument("accuracy: empty sequences");
  std::int64_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == gold[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pred.size());
}

TagColumn baseline_random(const Lexicon& lexicon, const TokenSeqs& input,
                          std::uint64_t seed) {
  const std::vector<Tag> fallback = lexicon.top_tags(20);
  if (fallback.empty()) throw std::invalid_argument("baseline_random: empty lexicon");
  TagColumn column;
  column.utterances.reserve(input.size());
  std::size_t row = 0;
  for (const auto& utt : input) {
    std::vector<Tag> tags;
    tags.reserve(utt.size());
    for (const auto& token : utt) {
      Rng rng = row_rng(seed, row++);
      if (const auto* counts = lexicon.tags_of(token)) {
        std::size_t pick = rng.below(counts->size());
        auto it = counts->begin();
        std::advance(it, static_cast<long>(pick));
        tags.push_back(it->first);
      } else {
        tags.push_back(fallback[rng.below(fallback.size())]);
      }
    }
    column.utterances.push_back(std::move(tags));
  }
  return column;
}

TagColumn baseline_lexprob(const Lexicon& lexicon, const TokenSeqs& input) {
  const Tag fallback = lexicon.global_modal_tag();
  TagColumn column;
  column.utterances.reserve(input.size());
  for (const auto& utt : input) {
    std::vector<Tag> tags;
    tags.reserve(utt.size());
    for (const auto& token : utt) {
      tags.push_back(lexicon.contains(token) ? lexicon.modal_tag(token) : fallback);
    }
    column.utterances.push_back(std::move(tags));
  }
  return column;
}

AgreementBreakdown agreement_breakdown(const TaggerMatrix& matrix) {
  if (!matrix.has_gold()) {
    throw std::invalid_argument("agreement_breakdown: matrix has no gold tags");
  }
  std::int64_t all_correct = 0;
  std::int64_t majority = 0;
  std::int64_t no_majority = 0;
  std::int64_t minority = 0;
  std::int64_t all_wrong = 0;
  for (const auto& row : matrix.rows) {
    std::map<Tag, std::size_t> blocs;
    for (const Tag& s : row.suggestions) ++blocs[s];
    auto gold_it = blocs.find(*row.gold);
    if (gold_it == blocs.end()) {
      ++all_wrong;
      continue;
    }
    const std::size_t gold_bloc = gold_it->second;
    if (gold_bloc == row.suggestions.size()) {
      ++all_correct;
      continue;
    }
    std::size_t largest_other = 0;
    for (const auto& [tag, size] : blocs) {
      if (tag != *row.gold) largest_other = std::max(largest_other, size);
    }
    if (gold_bloc > largest_other) {
      ++majority;
    } else if (gold_bloc == largest_other) {
      ++no_majority;
    } else {
      ++minority;
    }
  }
  AgreementBreakdown out;
  out.tokens = static_cast<std::int64_t>(matrix.rows.size());
  const double n = static_cast<double>(out.tokens);
  out.all_correct = static_cast<double>(all_correct) / n;
  out.majority_correct = static_cast<double>(majority) / n;
  out.correct_no_majority = static_cast<double>(no_majority) / n;
  out.minority_correct = static_cast<double>(minority) / n;
  out.all_wrong = static_cast<double>(all_wrong) / n;
  return out;
}

OracleBounds oracle_bounds(const AgreementBreakdown& breakdown) {
  OracleBounds bounds;
  bounds.any_correct = 1.0 - breakdown.all_wrong;
  bounds.not_outvoted = breakdown.all_correct + breakdown.majority_correct +
                        breakdown.correct_no_majority;
  return bounds;
}

OracleBounds oracle_bounds(const TaggerMatrix& matrix) {
  return oracle_bounds(agreement_breakdown(matrix));
}

McNemarResult mcnemar(std::span<const Tag> pred_a, std::span<const Tag> pred_b,
                      std::span<const Tag> gold, bool continuity_correction) {
  if (pred_a.size() != gold.size() || pred_b.size() != gold.size()) {
    throw std::invalid_argument("mcnemar: length mismatch");
  }
  McNemarResult result;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool a_right = pred_a[i] == gold[i];
    const bool b_right = pred_b[i] == gold[i];
    if (a_right && !b_right) ++result.b;
    if (!a_right && b_right) ++result.c;
  }
  const std::int64_t discordant = result.b + result.c;
  if (discordant == 0) {
    result.chi_square = 0.0;
    result.p = 1.0;
    return result;
  }
  double diff = std::abs(static_cast<double>(result.b - result.c));
  if (continuity_correction) diff = std::max(0.0, diff - 1.0);
  result.chi_square = diff * diff / static_cast<double>(discordant);
  result.p = chi_square_1df_sf(result.chi_square);
  return result;
}

double PerTagStats::precision() const {
  return suggested == 0 ? 0.0
                        : static_cast<double>(correct) / static_cast<double>(suggested);
}

double PerTagStats::recall() const {
  return gold == 0 ? 0.0
                   : static_cast<double>(correct) / static_cast<double>(gold);
}

EvalReport evaluate(std::span<const Tag> pred, const TaggedCorpus& gold,
                    const std::optional<std::vector<Tag>>& against,
                    const Lexicon* train_lexicon, bool continuity_correction) {
  const TagColumn gold_column = gold_of(gold);
  const std::vector<Tag> gold_flat = gold_column.flat();
  if (pred.size() != gold_flat.size()) {
    throw std::invalid_argument("evaluate: prediction/benchmark length mismatch");
  }
  EvalReport report;
  report.tokens = static_cast<std::int64_t>(gold_flat.size());
  for (std::size_t i = 0; i < gold_flat.size(); ++i) {
    auto& suggested = report.per_tag[pred[i]];
    ++suggested.suggested;
    if (pred[i] == gold_flat[i]) {
      ++suggested.correct;
      ++report.correct;
    }
    ++report.per_tag[gold_flat[i]].gold;
  }
  report.accuracy =
      static_cast<double>(report.correct) / static_cast<double>(report.tokens);
  if (against.has_value()) {
    report.mcnemar = mcnemar(pred, *against, gold_flat, continuity_correction);
  }
  if (train_lexicon != nullptr) {
    std::int64_t new_tokens = 0;
    std::int64_t known = 0;
    std::int64_t known_new_tag = 0;
    for (const auto& utt : gold.utterances) {
      for (const auto& tt : utt) {
        if (const auto* counts = train_lexicon->tags_of(tt.token)) {
          ++known;
          if (counts->find(tt.tag) == counts->end()) ++known_new_tag;
        } else {
          ++new_tokens;
        }
      }
    }
    report.new_token_rate =
        static_cast<double>(new_tokens) / static_cast<double>(report.tokens);
    report.known_token_new_tag_rate =
        known == 0 ? 0.0
                   : static_cast<double>(known_new_tag) / static_cast<double>(known);
  }
  return report;
}

} // namespace combitag
