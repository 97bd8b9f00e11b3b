#ifndef COMBITAG_LEXICON_HPP
#define COMBITAG_LEXICON_HPP

#include "combitag/corpus.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace combitag {

// Token -> tag counts from Train. P(t|w) = count(w,t) / count(w).
class Lexicon {
public:
  using TagCounts = std::map<Tag, std::int64_t>;

  bool contains(const std::string& token) const;
  std::int64_t frequency(const std::string& token) const;
  // nullptr for unknown tokens.
  const TagCounts* tags_of(const std::string& token) const;
  double prob(const Tag& tag, const std::string& token) const;

  // Highest count; ties resolved toward the lexicographically smaller tag.
  Tag modal_tag(const std::string& token) const;
  Tag global_modal_tag() const;
  // Sorted lexicon tags of a token rendered as one symbol, e.g. "NN|VB".
  std::string ambiguity_class(const std::string& token) const;
  // Most frequent tags overall (count desc, name asc).
  std::vector<Tag> top_tags(std::size_t n) const;

  const std::map<Tag, std::int64_t>& tag_counts() const { return tag_counts_; }
  std::int64_t total_tokens() const { return total_tokens_; }
  std::size_t vocabulary_size() const { return entries_.size(); }
  const std::unordered_map<std::string, TagCounts>& entries() const {
    return entries_;
  }

  friend Lexicon build_lexicon(const TaggedCorpus& train);
  friend Lexicon lexicon_from_counts(
      const std::vector<std::tuple<std::string, Tag, std::int64_t>>& rows);

private:
  std::unordered_map<std::string, TagCounts> entries_;
  std::map<Tag, std::int64_t> tag_counts_;
  std::int64_t total_tokens_ = 0;
};

Lexicon build_lexicon(const TaggedCorpus& train);
Lexicon lexicon_from_counts(
    const std::vector<std::tuple<std::string, Tag, std::int64_t>>& rows);

} // namespace combitag

#endif
