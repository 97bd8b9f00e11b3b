#ifndef COMBITAG_MATRIX_HPP
#define COMBITAG_MATRIX_HPP

#include "combitag/corpus.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace combitag {

struct MatrixRow {
  std::string token;
  std::optional<Tag> gold;
  std::vector<Tag> suggestions; // one per tagger, in tagger_ids order
};

// Per-token aligned suggestions from N taggers, with utterance boundaries
// preserved. The carrier for every combination method.
struct TaggerMatrix {
  std::vector<std::string> tagger_ids;
  std::vector<MatrixRow> rows;
  std::vector<std::size_t> utterance_lengths; // sums to rows.size()

  std::size_t n_taggers() const { return tagger_ids.size(); }
  bool has_gold() const;
  std::vector<std::size_t> utterance_offsets() const;
};

TaggerMatrix align_outputs(const TaggedCorpus& benchmark,
                           const std::vector<TagColumn>& columns,
                           const std::vector<std::string>& tagger_ids);

// Suggestions of one tagger as a flat sequence / boundary-shaped column.
std::vector<Tag> suggestion_column(const TaggerMatrix& matrix, std::size_t tagger);
std::vector<Tag> gold_column(const TaggerMatrix& matrix);
TagColumn to_column(const TaggerMatrix& matrix, const std::vector<Tag>& flat_tags);

// Keep only the given taggers (indices into tagger_ids).
TaggerMatrix project(const TaggerMatrix& matrix,
                     const std::vector<std::size_t>& taggers);

struct MatrixSplit {
  TaggerMatrix train;
  TaggerMatrix tune;
  TaggerMatrix test;
};

// Same 8/1/1 utterance rule as split_corpus.
MatrixSplit split_matrix(const TaggerMatrix& matrix);

TaggerMatrix parse_matrix(std::istream& in);
TaggerMatrix load_matrix(const std::string& path);
void serialize_matrix(const TaggerMatrix& matrix, std::ostream& out);
void save_matrix(const TaggerMatrix& matrix, const std::string& path);

} // namespace combitag

#endif
