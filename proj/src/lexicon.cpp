#include "combitag/lexicon.hpp"

#include <algorithm>
#include <stdexcept>

namespace combitag {

bool Lexicon::contains(const std::string& token) const {
  return entries_.find(token) != entries_.end();
}

std::int64_t Lexicon::frequency(const std::string& token) const {
  auto it = entries_.find(token);
  if (it == entries_.end()) return 0;
  std::int64_t n = 0;
  for (const auto& [tag, count] : it->second) n += count;
  return n;
}

const Lexicon::TagCounts* Lexicon::tags_of(const std::string& token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? nullptr : &it->second;
}

double Lexicon::prob(const Tag& tag, const std::string& token) const {
  auto it = entries_.find(token);
  if (it == entries_.end()) return 0.0;
  std::int64_t total = 0;
  std::int64_t hit = 0;
  for (const auto& [t, count] : it->second) {
    total += count;
    if (t == tag) hit = count;
  }
  return total == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(total);
}

namespace {

Tag modal_of(const std::map<Tag, std::int64_t>& counts) {
  Tag best;
  std::int64_t best_count = -1;
  for (const auto& [tag, count] : counts) {
    if (count > best_count) {
      best = tag;
      best_count = count;
    }
  }
  return best;
}

} // namespace

Tag Lexicon::modal_tag(const std::string& token) const {
  auto it = entries_.find(token);
  if (it == entries_.end()) {
    throw std::out_of_range("modal_tag: unknown token: " + token);
  }
  return modal_of(it->second);
}

Tag Lexicon::global_modal_tag() const { return modal_of(tag_counts_); }

std::string Lexicon::ambiguity_class(const std::string& token) const {
  auto it = entries_.find(token);
  if (it == entries_.end()) return {};
  std::string out;
  for (const auto& [tag, count] : it->second) {
    if (!out.empty()) out += '|';
    out += tag;
  }
  return out;
}

std::vector<Tag> Lexicon::top_tags(std::size_t n) const {
  std::vector<std::pair<Tag, std::int64_t>> tags(tag_counts_.begin(),
                                                 tag_counts_.end());
  std::stable_sort(tags.begin(), tags.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  std::vector<Tag> out;
  for (const auto& [tag, count] : tags) {
    if (out.size() >= n) break;
    out.push_back(tag);
  }
  return out;
}

Lexicon build_lexicon(const TaggedCorpus& train) {
  if (train.utterances.empty()) {
    throw std::invalid_argument("build_lexicon: empty training corpus");
  }
  Lexicon lex;
  for (const auto& u : train.utterances) {
    for (const auto& tt : u) {
      ++lex.entries_[tt.token][tt.tag];
      ++lex.tag_counts_[tt.tag];
      ++lex.total_tokens_;
    }
  }
  return lex;
}

Lexicon lexicon_from_counts(
    const std::vector<std::tuple<std::string, Tag, std::int64_t>>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("lexicon_from_counts: no entries");
  }
  Lexicon lex;
  for (const auto& [token, tag, count] : rows) {
    if (count < 1) {
      throw std::invalid_argument("lexicon_from_counts: counts must be >= 1");
    }
    lex.entries_[token][tag] += count;
    lex.tag_counts_[tag] += count;
    lex.total_tokens_ += count;
  }
  return lex;
}

} // namespace combitag
