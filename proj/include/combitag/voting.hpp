#ifndef COMBITAG_VOTING_HPP
#define COMBITAG_VOTING_HPP

#include "combitag/matrix.hpp"
#include "combitag/parallel.hpp"
#include "combitag/rng.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace combitag {

struct TagTally {
  std::int64_t suggested = 0; // tagger proposed this tag
  std::int64_t correct = 0;   // ... and the benchmark agreed
  std::int64_t gold = 0;      // benchmark occurrences of this tag
};

// Per-tagger accuracy and per-(tagger, tag) precision/recall measured on a
// gold-bearing matrix (Tune). Pairs never observed fall back to the tagger's
// overall accuracy so no weight degenerates to 0/undefined.
class WeightTable {
public:
  static WeightTable from_matrix(const TaggerMatrix& tune);

  std::size_t n_taggers() const { return tagger_ids_.size(); }
  const std::vector<std::string>& tagger_ids() const { return tagger_ids_; }
  double overall_accuracy(std::size_t tagger) const { return overall_[tagger]; }
  double precision(std::size_t tagger, const Tag& tag) const;
  double recall(std::size_t tagger, const Tag& tag) const;
  const std::map<Tag, TagTally>& tallies(std::size_t tagger) const {
    return per_tag_[tagger];
  }

private:
  std::vector<std::string> tagger_ids_;
  std::vector<double> overall_;
  std::vector<std::map<Tag, TagTally>> per_tag_;
};

// Tied winner sets (sorted by tag); the vote_* wrappers resolve ties with a
// draw from the seeded source. Scores per tag are summed over sorted
// contribution lists, which makes the winner set independent of tagger order.
std::vector<Tag> winners_majority(std::span<const Tag> suggestions);
std::vector<Tag> winners_tot_precision(std::span<const Tag> suggestions,
                                       const WeightTable& table);
std::vector<Tag> winners_tag_precision(std::span<const Tag> suggestions,
                                       const WeightTable& table);
std::vector<Tag> winners_precision_recall(std::span<const Tag> suggestions,
                                          const WeightTable& table);

Tag pick_winner(const std::vector<Tag>& winners, Rng& rng);

Tag vote_majority(std::span<const Tag> suggestions, Rng& rng);
Tag vote_tot_precision(std::span<const Tag> suggestions, const WeightTable& table,
                       Rng& rng);
Tag vote_tag_precision(std::span<const Tag> suggestions, const WeightTable& table,
                       Rng& rng);
Tag vote_precision_recall(std::span<const Tag> suggestions,
                          const WeightTable& table, Rng& rng);

enum class VotingMethod { majority, tot_precision, tag_precision, precision_recall };

VotingMethod voting_method_from_string(const std::string& s);
std::string to_string(VotingMethod method);

// Row-parallel kernel; row i draws its tie-break stream from
// mix_seed(seed, i).
std::vector<Tag> combine_voting(const TaggerMatrix& test, const WeightTable& table,
                                VotingMethod method, std::uint64_t seed,
                                Exec exec = Exec::parallel);

} // namespace combitag

#endif
