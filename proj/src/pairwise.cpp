#include "combitag/pairwise.hpp"

#include "combitag/util.hpp"
#include "combitag/voting.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace combitag {

double PairTable::Dist::prob(const Tag& tag) const {
  auto it = counts.find(tag);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

std::map<Tag, double> PairTable::Dist::probabilities() const {
  std::map<Tag, double> out;
  for (const auto& [tag, count] : counts) {
    out[tag] = static_cast<double>(count) / static_cast<double>(total);
  }
  return out;
}

std::size_t PairTable::pair_index(std::size_t i, std::size_t j) const {
  // Row-major upper triangle, i < j.
  const std::size_t n = tagger_ids_.size();
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

PairTable PairTable::from_matrix(const TaggerMatrix& tune) {
  if (!tune.has_gold()) {
    throw std::invalid_argument("PairTable: tune matrix has no gold tags");
  }
  const std::size_t n = tune.n_taggers();
  if (n < 2) throw std::invalid_argument("PairTable: need at least 2 taggers");
  PairTable table;
  table.tagger_ids_ = tune.tagger_ids;
  table.pair_.resize(n * (n - 1) / 2);
  table.single_.resize(n);
  for (const auto& row : tune.rows) {
    const Tag& gold = *row.gold;
    for (std::size_t i = 0; i < n; ++i) {
      auto& dist = table.single_[i][row.suggestions[i]];
      ++dist.total;
      ++dist.counts[gold];
      for (std::size_t j = i + 1; j < n; ++j) {
        auto& pd = table.pair_[table.pair_index(i, j)]
                            [{row.suggestions[i], row.suggestions[j]}];
        ++pd.total;
        ++pd.counts[gold];
      }
    }
  }
  return table;
}

const PairTable::Dist* PairTable::pair_dist(std::size_t i, std::size_t j,
                                            const Tag& t1, const Tag& t2) const {
  if (i >= j || j >= tagger_ids_.size()) {
    throw std::out_of_range("pair_dist: bad tagger pair");
  }
  const auto& m = pair_[pair_index(i, j)];
  auto it = m.find({t1, t2});
  return it == m.end() ? nullptr : &it->second;
}

const PairTable::Dist* PairTable::single_dist(std::size_t i, const Tag& t1) const {
  if (i >= tagger_ids_.size()) throw std::out_of_range("single_dist: bad tagger");
  auto it = single_[i].find(t1);
  return it == single_[i].end() ? nullptr : &it->second;
}

std::vector<Tag> winners_tagpair(std::span<const Tag> suggestions,
                                 const PairTable& table,
                                 std::int64_t min_pair_count) {
  const std::size_t n = table.n_taggers();
  if (suggestions.size() != n) {
    throw std::invalid_argument("vote_tagpair: suggestion count mismatch");
  }
  // Contributions per tag collected across pairs and summed smallest-first,
  // so relabeling tagger order cannot perturb the totals.
  std::map<Tag, std::vector<double>> contribs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto* pd = table.pair_dist(i, j, suggestions[i], suggestions[j]);
      if (pd != nullptr && pd->total >= min_pair_count) {
        for (const auto& [tag, count] : pd->counts) {
          contribs[tag].push_back(static_cast<double>(count) /
                                  static_cast<double>(pd->total));
        }
      } else {
        for (std::size_t side = 0; side < 2; ++side) {
          const auto* sd = table.single_dist(side == 0 ? i : j,
                                             suggestions[side == 0 ? i : j]);
          if (sd == nullptr) continue; // fully unseen suggestion
          for (const auto& [tag, count] : sd->counts) {
            contribs[tag].push_back(0.5 * static_cast<double>(count) /
                                    static_cast<double>(sd->total));
          }
        }
      }
    }
  }
  std::vector<Tag> winners;
  double best = 0.0;
  for (auto& [tag, values] : contribs) {
    std::sort(values.begin(), values.end());
    double score = 0.0;
    for (double v : values) score += v;
    if (score <= 0.0) continue;
    if (winners.empty() || score > best) {
      winners.assign(1, tag);
      best = score;
    } else if (score == best) {
      winners.push_back(tag);
    }
  }
  return winners;
}

Tag vote_tagpair(std::span<const Tag> suggestions, const PairTable& table,
                 Rng& rng, std::int64_t min_pair_count) {
  auto winners = winners_tagpair(suggestions, table, min_pair_count);
  if (winners.empty()) {
    // No consulted distribution had mass; decide the row by plain vote.
    winners = winners_majority(suggestions);
  }
  return pick_winner(winners, rng);
}

std::vector<Tag> combine_tagpair(const TaggerMatrix& test, const PairTable& table,
                                 std::uint64_t seed, std::int64_t min_pair_count,
                                 Exec exec) {
  if (test.tagger_ids != table.tagger_ids()) {
    throw std::invalid_argument("combine_tagpair: matrix/table tagger ids differ");
  }
  std::vector<Tag> out(test.rows.size());
  for_each_index(exec, test.rows.size(), [&](std::size_t r) {
    Rng rng = row_rng(seed, r);
    out[r] = vote_tagpair(test.rows[r].suggestions, table, rng, min_pair_count);
  });
  return out;
}

void PairTable::write(std::ostream& out) const {
  out << "pairtable v1\n";
  out << "taggers";
  for (const auto& id : tagger_ids_) out << '\t' << id;
  out << '\n';
  for (std::size_t i = 0; i < single_.size(); ++i) {
    for (const auto& [t1, dist] : single_[i]) {
      out << "S\t" << i << '\t' << t1 << '\t' << dist.total;
      for (const auto& [tag, count] : dist.counts) {
        out << '\t' << tag << '\t' << count;
      }
      out << '\n';
    }
  }
  const std::size_t n = tagger_ids_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const auto& [key, dist] : pair_[pair_index(i, j)]) {
        out << "P\t" << i << '\t' << j << '\t' << key.first << '\t' << key.second
            << '\t' << dist.total;
        for (const auto& [tag, count] : dist.counts) {
          out << '\t' << tag << '\t' << count;
        }
        out << '\n';
      }
    }
  }
}

PairTable PairTable::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "pairtable v1") {
    throw IoError("pairtable: bad header");
  }
  if (!std::getline(in, line)) throw IoError("pairtable: missing tagger line");
  auto header = split_fields(line, '\t');
  if (header.size() < 3 || header[0] != "taggers") {
    throw IoError("pairtable: bad tagger line");
  }
  PairTable table;
  table.tagger_ids_.assign(header.begin() + 1, header.end());
  const std::size_t n = table.tagger_ids_.size();
  table.pair_.resize(n * (n - 1) / 2);
  table.single_.resize(n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_fields(line, '\t');
    auto parse_counts = [&](Dist& dist, std::size_t from) {
      if ((f.size() - from) % 2 != 0) throw IoError("pairtable: ragged count list");
      for (std::size_t k = from; k < f.size(); k += 2) {
        dist.counts[f[k]] = std::stoll(f[k + 1]);
      }
    };
    if (f[0] == "S") {
      if (f.size() < 6) throw IoError("pairtable: bad single row");
      Dist dist;
      dist.total = std::stoll(f[3]);
      parse_counts(dist, 4);
      table.single_.at(std::stoul(f[1]))[f[2]] = std::move(dist);
    } else if (f[0] == "P") {
      if (f.size() < 8) throw IoError("pairtable: bad pair row");
      std::size_t i = std::stoul(f[1]);
      std::size_t j = std::stoul(f[2]);
      if (i >= j || j >= n) throw IoError("pairtable: bad pair indices");
      Dist dist;
      dist.total = std::stoll(f[5]);
      parse_counts(dist, 6);
      table.pair_[table.pair_index(i, j)][{f[3], f[4]}] = std::move(dist);
    } else {
      throw IoError("pairtable: unknown row kind: " + f[0]);
    }
  }
  return table;
}

} // namespace combitag
