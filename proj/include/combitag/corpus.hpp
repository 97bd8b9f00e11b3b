#ifndef COMBITAG_CORPUS_HPP
#define COMBITAG_CORPUS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace combitag {

// Tags are plain strings; multi-token unit component tags such as "CC-1"
// are ordinary distinct names with no special handling anywhere.
using Tag = std::string;

struct TokenTag {
  std::string token;
  Tag tag;
  bool operator==(const TokenTag&) const = default;
};

using Utterance = std::vector<TokenTag>;

struct TaggedCorpus {
  std::vector<Utterance> utterances;

  std::size_t token_count() const;
  bool operator==(const TaggedCorpus&) const = default;
};

// Vertical format: one "token<TAB>tag" per line, utterances separated by
// exactly one blank line.
TaggedCorpus parse_corpus(std::istream& in);
TaggedCorpus load_corpus(const std::string& path);
void serialize_corpus(const TaggedCorpus& corpus, std::ostream& out);
void save_corpus(const TaggedCorpus& corpus, const std::string& path);

struct CorpusSplit {
  TaggedCorpus train;
  TaggedCorpus tune;
  TaggedCorpus test;
};

// Utterances at positions 0..7 (mod 10) go to train, 8 to tune, 9 to test.
CorpusSplit split_corpus(const TaggedCorpus& corpus);

// One tag per benchmark token; blank lines mirror utterance boundaries.
struct TagColumn {
  std::vector<std::vector<Tag>> utterances;

  std::size_t tag_count() const;
  std::vector<Tag> flat() const;
  bool operator==(const TagColumn&) const = default;
};

TagColumn parse_column(std::istream& in);
TagColumn load_column(const std::string& path);
void serialize_column(const TagColumn& column, std::ostream& out);
void save_column(const TagColumn& column, const std::string& path);

// Token sequences without tags (tagger input).
using TokenSeqs = std::vector<std::vector<std::string>>;
TokenSeqs tokens_of(const TaggedCorpus& corpus);
TagColumn gold_of(const TaggedCorpus& corpus);

// Accepts either vertical two-field lines (tags ignored) or bare one-field
// token lines, with blank-line utterance boundaries.
TokenSeqs load_tokens(const std::string& path);

} // namespace combitag

#endif
