#ifndef COMBITAG_EVAL_HPP
#define COMBITAG_EVAL_HPP

#include "combitag/corpus.hpp"
#include "combitag/lexicon.hpp"
#include "combitag/matrix.hpp"
#include "combitag/parallel.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace combitag {

double accuracy(std::span<const Tag> pred, std::span<const Tag> gold);

// Baselines over a training lexicon. Unknown tokens: Random draws uniformly
// from the 20 most frequent training tags, LexProb backs off to the single
// most frequent tag.
TagColumn baseline_random(const Lexicon& lexicon, const TokenSeqs& input,
                          std::uint64_t seed);
TagColumn baseline_lexprob(const Lexicon& lexicon, const TokenSeqs& input);

// How the correct tag sits among the suggestion blocs of each row:
// unanimous and right / strictly largest bloc / tied-largest bloc /
// present but outvoted / absent.
struct AgreementBreakdown {
  double all_correct = 0.0;
  double majority_correct = 0.0;
  double correct_no_majority = 0.0;
  double minority_correct = 0.0;
  double all_wrong = 0.0;
  std::int64_t tokens = 0;
};

AgreementBreakdown agreement_breakdown(const TaggerMatrix& matrix);

struct OracleBounds {
  double any_correct = 0.0;   // some tagger has the right tag
  double not_outvoted = 0.0;  // the right tag is not outvoted
};

OracleBounds oracle_bounds(const AgreementBreakdown& breakdown);
OracleBounds oracle_bounds(const TaggerMatrix& matrix);

struct McNemarResult {
  std::int64_t b = 0; // A right, B wrong
  std::int64_t c = 0; // A wrong, B right
  double chi_square = 0.0;
  double p = 1.0;
};

McNemarResult mcnemar(std::span<const Tag> pred_a, std::span<const Tag> pred_b,
                      std::span<const Tag> gold, bool continuity_correction = true);

struct PerTagStats {
  std::int64_t suggested = 0;
  std::int64_t correct = 0;
  std::int64_t gold = 0;
  double precision() const;
  double recall() const;
};

struct EvalReport {
  double accuracy = 0.0;
  std::int64_t tokens = 0;
  std::int64_t correct = 0;
  std::map<Tag, PerTagStats> per_tag;
  std::optional<McNemarResult> mcnemar;
  // Share of tokens unseen in a reference training corpus, and of known
  // tokens whose gold tag never occurred with them there.
  std::optional<double> new_token_rate;
  std::optional<double> known_token_new_tag_rate;
};

EvalReport evaluate(std::span<const Tag> pred, const TaggedCorpus& gold,
                    const std::optional<std::vector<Tag>>& against = std::nullopt,
                    const Lexicon* train_lexicon = nullptr,
                    bool continuity_correction = true);

} // namespace combitag

#endif
