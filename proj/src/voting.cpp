#include "combitag/voting.hpp"

#include <algorithm>
#include <stdexcept>

namespace combitag {

WeightTable WeightTable::from_matrix(const TaggerMatrix& tune) {
  if (!tune.has_gold()) {
    throw std::invalid_argument("WeightTable: tune matrix has no gold tags");
  }
  WeightTable table;
  table.tagger_ids_ = tune.tagger_ids;
  const std::size_t n = tune.n_taggers();
  table.per_tag_.resize(n);
  std::vector<std::int64_t> correct(n, 0);
  for (const auto& row : tune.rows) {
    const Tag& gold = *row.gold;
    for (std::size_t i = 0; i < n; ++i) {
      auto& tally = table.per_tag_[i][row.suggestions[i]];
      ++tally.suggested;
      if (row.suggestions[i] == gold) {
        ++tally.correct;
        ++correct[i];
      }
      ++table.per_tag_[i][gold].gold;
    }
  }
  table.overall_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    table.overall_[i] = static_cast<double>(correct[i]) /
                        static_cast<double>(tune.rows.size());
  }
  return table;
}

double WeightTable::precision(std::size_t tagger, const Tag& tag) const {
  auto it = per_tag_[tagger].find(tag);
  if (it == per_tag_[tagger].end() || it->second.suggested == 0) {
    return overall_[tagger];
  }
  return static_cast<double>(it->second.correct) /
         static_cast<double>(it->second.suggested);
}

double WeightTable::recall(std::size_t tagger, const Tag& tag) const {
  auto it = per_tag_[tagger].find(tag);
  if (it == per_tag_[tagger].end() || it->second.gold == 0) {
    return overall_[tagger];
  }
  return static_cast<double>(it->second.correct) /
         static_cast<double>(it->second.gold);
}

namespace {

// Sum each tag's contributions smallest-first so reordering taggers cannot
// perturb the float totals.
std::vector<Tag> argmax_sorted_sums(std::map<Tag, std::vector<double>>& contribs) {
  std::vector<Tag> winners;
  double best = 0.0;
  for (auto& [tag, values] : contribs) {
    std::sort(values.begin(), values.end());
    double score = 0.0;
    for (double v : values) score += v;
    if (winners.empty() || score > best) {
      winners.assign(1, tag);
      best = score;
    } else if (score == best) {
      winners.push_back(tag);
    }
  }
  return winners;
}

void require_nonempty(std::span<const Tag> suggestions) {
  if (suggestions.empty()) {
    throw std::invalid_argument("vote: no suggestions");
  }
}

} // namespace

std::vector<Tag> winners_majority(std::span<const Tag> suggestions) {
  require_nonempty(suggestions);
  std::map<Tag, std::int64_t> votes;
  for (const Tag& s : suggestions) ++votes[s];
  std::vector<Tag> winners;
  std::int64_t best = 0;
  for (const auto& [tag, count] : votes) {
    if (count > best) {
      winners.assign(1, tag);
      best = count;
    } else if (count == best) {
      winners.push_back(tag);
    }
  }
  return winners;
}

std::vector<Tag> winners_tot_precision(std::span<const Tag> suggestions,
                                       const WeightTable& table) {
  require_nonempty(suggestions);
  std::map<Tag, std::vector<double>> contribs;
  for (std::size_t i = 0; i < suggestions.size(); ++i) {
    contribs[suggestions[i]].push_back(table.overall_accuracy(i));
  }
  return argmax_sorted_sums(contribs);
}

std::vector<Tag> winners_tag_precision(std::span<const Tag> suggestions,
                                       const WeightTable& table) {
  require_nonempty(suggestions);
  std::map<Tag, std::vector<double>> contribs;
  for (std::size_t i = 0; i < suggestions.size(); ++i) {
    contribs[suggestions[i]].push_back(table.precision(i, suggestions[i]));
  }
  return argmax_sorted_sums(contribs);
}

std::vector<Tag> winners_precision_recall(std::span<const Tag> suggestions,
                                          const WeightTable& table) {
  require_nonempty(suggestions);
  std::map<Tag, std::vector<double>> contribs;
  for (const Tag& s : suggestions) contribs[s]; // suggested set
  for (auto& [tag, values] : contribs) {
    for (std::size_t i = 0; i < suggestions.size(); ++i) {
      if (suggestions[i] == tag) {
        values.push_back(table.precision(i, tag));
      } else {
        values.push_back(1.0 - table.recall(i, tag));
      }
    }
  }
  return argmax_sorted_sums(contribs);
}

Tag pick_winner(const std::vector<Tag>& winners, Rng& rng) {
  if (winners.empty()) throw std::invalid_argument("pick_winner: empty winner set");
  if (winners.size() == 1) return winners[0];
  return winners[rng.below(winners.size())];
}

Tag vote_majority(std::span<const Tag> suggestions, Rng& rng) {
  return pick_winner(winners_majority(suggestions), rng);
}

Tag vote_tot_precision(std::span<const Tag> suggestions, const WeightTable& table,
                       Rng& rng) {
  return pick_winner(winners_tot_precision(suggestions, table), rng);
}

Tag vote_tag_precision(std::span<const Tag> suggestions, const WeightTable& table,
                       Rng& rng) {
  return pick_winner(winners_tag_precision(suggestions, table), rng);
}

Tag vote_precision_recall(std::span<const Tag> suggestions,
                          const WeightTable& table, Rng& rng) {
  return pick_winner(winners_precision_recall(suggestions, table), rng);
}

VotingMethod voting_method_from_string(const std::string& s) {
  if (s == "majority") return VotingMethod::majority;
  if (s == "totprec") return VotingMethod::tot_precision;
  if (s == "tagprec") return VotingMethod::tag_precision;
  if (s == "precrec") return VotingMethod::precision_recall;
  throw std::invalid_argument("unknown voting method: " + s);
}

std::string to_string(VotingMethod method) {
  switch (method) {
    case VotingMethod::majority: return "majority";
    case VotingMethod::tot_precision: return "totprec";
    case VotingMethod::tag_precision: return "tagprec";
    case VotingMethod::precision_recall: return "precrec";
  }
  return "?";
}

std::vector<Tag> combine_voting(const TaggerMatrix& test, const WeightTable& table,
                                VotingMethod method, std::uint64_t seed, Exec exec) {
  if (test.tagger_ids != table.tagger_ids()) {
    throw std::invalid_argument("combine_voting: matrix/table tagger ids differ");
  }
  std::vector<Tag> out(test.rows.size());
  for_each_index(exec, test.rows.size(), [&](std::size_t r) {
    Rng rng = row_rng(seed, r);
    std::span<const Tag> s(test.rows[r].suggestions);
    switch (method) {
      case VotingMethod::majority:
        out[r] = vote_majority(s, rng);
        break;
      case VotingMethod::tot_precision:
        out[r] = vote_tot_precision(s, table, rng);
        break;
      case VotingMethod::tag_precision:
        out[r] = vote_tag_precision(s, table, rng);
        break;
      case VotingMethod::precision_recall:
        out[r] = vote_precision_recall(s, table, rng);
        break;
    }
  });
  return out;
}

} // namespace combitag
