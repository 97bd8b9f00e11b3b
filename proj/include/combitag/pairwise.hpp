#ifndef COMBITAG_PAIRWISE_HPP
#define COMBITAG_PAIRWISE_HPP

#include "combitag/matrix.hpp"
#include "combitag/parallel.hpp"
#include "combitag/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace combitag {

// Conditional distributions over the correct tag, estimated on Tune: one per
// (tagger pair, suggested tag pair) plus per-tagger fallbacks used when a
// suggestion pair was never observed.
class PairTable {
public:
  struct Dist {
    std::int64_t total = 0;
    std::map<Tag, std::int64_t> counts;

    double prob(const Tag& tag) const;
    std::map<Tag, double> probabilities() const;
  };

  static PairTable from_matrix(const TaggerMatrix& tune);

  std::size_t n_taggers() const { return tagger_ids_.size(); }
  const std::vector<std::string>& tagger_ids() const { return tagger_ids_; }

  // i < j required.
  const Dist* pair_dist(std::size_t i, std::size_t j, const Tag& t1,
                        const Tag& t2) const;
  const Dist* single_dist(std::size_t i, const Tag& t1) const;

  void write(std::ostream& out) const;
  static PairTable read(std::istream& in);

private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  std::vector<std::string> tagger_ids_;
  std::vector<std::map<std::pair<Tag, Tag>, Dist>> pair_; // indexed i<j
  std::vector<std::map<Tag, Dist>> single_;
};

// Winner set of one row. Every pair votes its Tune distribution over all
// tags it has mass for; an unseen pair contributes the equal mix of the two
// single-tagger fallbacks. Empty result means no consulted distribution had
// mass (the caller falls through to Majority).
std::vector<Tag> winners_tagpair(std::span<const Tag> suggestions,
                                 const PairTable& table,
                                 std::int64_t min_pair_count = 1);

Tag vote_tagpair(std::span<const Tag> suggestions, const PairTable& table,
                 Rng& rng, std::int64_t min_pair_count = 1);

std::vector<Tag> combine_tagpair(const TaggerMatrix& test, const PairTable& table,
                                 std::uint64_t seed,
                                 std::int64_t min_pair_count = 1,
                                 Exec exec = Exec::parallel);

} // namespace combitag

#endif
