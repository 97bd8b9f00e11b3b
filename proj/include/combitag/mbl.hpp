#ifndef COMBITAG_MBL_HPP
#define COMBITAG_MBL_HPP

#include "combitag/corpus.hpp"
#include "combitag/lexicon.hpp"
#include "combitag/parallel.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace combitag {

struct Case {
  std::vector<std::string> features;
  Tag label;
};

enum class Metric { overlap, ig_overlap };

std::string to_string(Metric metric);
Metric metric_from_string(const std::string& s);

// Per-feature Information Gain of the label distribution, in bits.
std::vector<double> information_gain(const std::vector<Case>& cases);

// Nearest-set classifier over symbolic features. Retrieval runs over
// feature-value posting lists; correctness is defined by equivalence to a
// linear scan with similarity summed in feature order.
class CaseBase {
public:
  // Default-constructed bases are empty; classify rejects them.
  CaseBase() = default;

  static CaseBase build(std::vector<std::string> schema,
                        const std::vector<Case>& cases, Metric metric);

  struct Result {
    Tag label;
    // Normalized label counts of the nearest set, ordered by tag name.
    std::vector<std::pair<Tag, double>> distribution;
    double distance; // weighted mismatch count of the nearest set
  };

  Result classify(std::span<const std::string> instance) const;

  std::size_t size() const { return n_cases_; }
  std::size_t arity() const { return schema_.size(); }
  const std::vector<std::string>& schema() const { return schema_; }
  Metric metric() const { return metric_; }
  const std::vector<double>& ig_weights() const { return ig_weights_; }
  const std::vector<double>& metric_weights() const { return metric_weights_; }

  void write(std::ostream& out) const;
  static CaseBase read(std::istream& in);

private:
  void build_index();

  std::vector<std::string> schema_;
  Metric metric_ = Metric::overlap;
  std::size_t n_cases_ = 0;

  std::vector<std::string> value_names_;
  std::unordered_map<std::string, std::int32_t> value_ids_;
  std::vector<std::string> label_names_; // sorted, id = rank
  std::vector<std::int32_t> data_;       // n_cases * arity feature value ids
  std::vector<std::int32_t> labels_;     // per case label id
  std::vector<std::int64_t> label_freq_; // per label id
  std::vector<double> ig_weights_;
  std::vector<double> metric_weights_;
  // postings_[f][value id] = case ids carrying that value at feature f
  std::vector<std::unordered_map<std::int32_t, std::vector<std::int32_t>>> postings_;
};

// Tagger M: known words are classified against full-context cases, unknown
// words against a base of rare ("pseudo-unknown") training tokens.
struct TaggerM {
  Lexicon lexicon;
  CaseBase known;
  CaseBase unknown;
};

CaseBase build_known_base(const TaggedCorpus& train, const Lexicon& lexicon);
// Trained from tokens with frequency <= max_frequency; falls back to every
// token when no such case exists.
CaseBase build_unknown_base(const TaggedCorpus& train, const Lexicon& lexicon,
                            std::int64_t max_frequency = 2);

TaggerM train_tagger_m(const TaggedCorpus& train);

std::vector<Tag> tag_utterance_m(const TaggerM& tagger,
                                 const std::vector<std::string>& tokens);
TagColumn tag_corpus_m(const TaggerM& tagger, const TokenSeqs& input,
                       Exec exec = Exec::parallel);

using TagDist = std::map<Tag, double>;
TagDist propose_unknown(const CaseBase& unknown_base, const std::string& token,
                        const std::string& left_tag);
TagDist propose_unknown(const TaggerM& tagger, const std::string& token,
                        const std::string& left_tag);

} // namespace combitag

#endif
