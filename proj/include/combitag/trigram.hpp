#ifndef COMBITAG_TRIGRAM_HPP
#define COMBITAG_TRIGRAM_HPP

#include "combitag/corpus.hpp"
#include "combitag/lexicon.hpp"
#include "combitag/mbl.hpp"
#include "combitag/parallel.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace combitag {

// Tag two utterance-initial positions are conditioned on.
inline const Tag kBoundaryTag = "__BOUND__";

struct TagError : std::runtime_error {
  explicit TagError(const std::string& msg) : std::runtime_error(msg) {}
};

// Context statistics P(t | t-1, t-2) as interpolated relative frequencies
// plus lexical statistics P(t | w) from the training lexicon.
class TrigramModel {
public:
  static TrigramModel train(const TaggedCorpus& train,
                            std::array<double, 3> lambdas = {0.7, 0.2, 0.1});

  // lambda3 * f(t|t-1,t-2) + lambda2 * f(t|t-1) + lambda1 * f(t)
  double context_prob(const Tag& tag, const Tag& prev1, const Tag& prev2) const;

  // Raw trigram relative frequencies of one stored context (for inspection
  // and tests; each stored distribution sums to 1).
  std::map<Tag, double> context_distribution(const Tag& prev1, const Tag& prev2) const;
  std::map<Tag, double> bigram_distribution(const Tag& prev1) const;
  std::map<Tag, double> unigram_distribution() const;

  const Lexicon& lexicon() const { return lexicon_; }
  const std::array<double, 3>& lambdas() const { return lambdas_; }
  const std::vector<Tag>& tags() const { return tag_names_; }

  void write(std::ostream& out) const;
  static TrigramModel read(std::istream& in);

private:
  friend struct TrigramModelAccess;
  std::int32_t tag_id(const Tag& tag) const; // -1 when unseen
  double context_prob_ids(std::int32_t t, std::int32_t p1, std::int32_t p2) const;

  std::array<double, 3> lambdas_{0.7, 0.2, 0.1};
  Lexicon lexicon_;
  std::vector<Tag> tag_names_; // id order; id 0 = boundary
  std::unordered_map<Tag, std::int32_t> tag_ids_;
  std::unordered_map<std::uint64_t, std::int64_t> trigram_;  // (p2,p1,t)
  std::unordered_map<std::uint64_t, std::int64_t> bigram_;   // (p1,t)
  std::unordered_map<std::uint64_t, std::int64_t> context2_; // (p2,p1)
  std::vector<std::int64_t> context1_;                       // p1
  std::vector<std::int64_t> unigram_;                        // t
  std::int64_t total_tokens_ = 0;

  friend std::vector<Tag> viterbi_tag(const TrigramModel&,
                                      const std::vector<std::string>&,
                                      const std::function<TagDist(const std::string&)>&);
};

// Distribution proposer for tokens missing from the lexicon.
using Proposer = std::function<TagDist(const std::string& token)>;

Proposer proposer_from(const CaseBase& unknown_base);
Proposer proposer_from(const TaggerM& tagger);

// Most probable tag sequence under the interpolated model, in log space.
// Known words draw candidates and P(t|w) from the lexicon, unknown words
// from the proposer. Ties at each backpointer go to the lexicographically
// smaller predecessor; the final state is the smallest tying (prev, last).
std::vector<Tag> viterbi_tag(const TrigramModel& model,
                             const std::vector<std::string>& tokens,
                             const Proposer& proposer);

TagColumn tag_corpus_t(const TrigramModel& model, const Proposer& proposer,
                       const TokenSeqs& input, Exec exec = Exec::parallel);

} // namespace combitag

#endif
