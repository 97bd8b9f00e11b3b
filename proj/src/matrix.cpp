#include "combitag/matrix.hpp"

#include "combitag/util.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace combitag {

namespace {
// Reserved "no gold tag" marker in matrix files.
const std::string kNoGold = "-";
} // namespace

bool TaggerMatrix::has_gold() const {
  if (rows.empty()) return false;
  for (const auto& row : rows) {
    if (!row.gold.has_value()) return false;
  }
  return true;
}

std::vector<std::size_t> TaggerMatrix::utterance_offsets() const {
  std::vector<std::size_t> offsets;
  offsets.reserve(utterance_lengths.size());
  std::size_t pos = 0;
  for (std::size_t len : utterance_lengths) {
    offsets.push_back(pos);
    pos += len;
  }
  return offsets;
}

TaggerMatrix align_outputs(const TaggedCorpus& benchmark,
                           const std::vector<TagColumn>& columns,
                           const std::vector<std::string>& tagger_ids) {
  if (columns.size() != tagger_ids.size()) {
    throw AlignError("align: " + std::to_string(columns.size()) +
                     " columns but " + std::to_string(tagger_ids.size()) +
                     " tagger ids");
  }
  const std::size_t n_utt = benchmark.utterances.size();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& col = columns[c];
    if (col.utterances.size() != n_utt) {
      throw AlignError("align: column '" + tagger_ids[c] + "' has " +
                       std::to_string(col.utterances.size()) +
                       " utterances, benchmark has " + std::to_string(n_utt));
    }
    std::size_t row = 0;
    for (std::size_t u = 0; u < n_utt; ++u) {
      if (col.utterances[u].size() != benchmark.utterances[u].size()) {
        row += std::min(col.utterances[u].size(), benchmark.utterances[u].size());
        throw AlignError("align: column '" + tagger_ids[c] +
                         "' diverges from benchmark at utterance " +
                         std::to_string(u + 1) + ", row " + std::to_string(row + 1));
      }
      row += benchmark.utterances[u].size();
    }
  }

  TaggerMatrix matrix;
  matrix.tagger_ids = tagger_ids;
  matrix.rows.reserve(benchmark.token_count());
  for (std::size_t u = 0; u < n_utt; ++u) {
    const auto& utt = benchmark.utterances[u];
    matrix.utterance_lengths.push_back(utt.size());
    for (std::size_t i = 0; i < utt.size(); ++i) {
      MatrixRow row;
      row.token = utt[i].token;
      row.gold = utt[i].tag;
      row.suggestions.reserve(columns.size());
      for (const auto& col : columns) row.suggestions.push_back(col.utterances[u][i]);
      matrix.rows.push_back(std::move(row));
    }
  }
  return matrix;
}

std::vector<Tag> suggestion_column(const TaggerMatrix& matrix, std::size_t tagger) {
  if (tagger >= matrix.n_taggers()) {
    throw std::out_of_range("suggestion_column: tagger index out of range");
  }
  std::vector<Tag> out;
  out.reserve(matrix.rows.size());
  for (const auto& row : matrix.rows) out.push_back(row.suggestions[tagger]);
  return out;
}

std::vector<Tag> gold_column(const TaggerMatrix& matrix) {
  std::vector<Tag> out;
  out.reserve(matrix.rows.size());
  for (const auto& row : matrix.rows) {
    if (!row.gold.has_value()) {
      throw std::invalid_argument("gold_column: matrix has rows without gold tags");
    }
    out.push_back(*row.gold);
  }
  return out;
}

TagColumn to_column(const TaggerMatrix& matrix, const std::vector<Tag>& flat_tags) {
  if (flat_tags.size() != matrix.rows.size()) {
    throw std::invalid_argument("to_column: tag count does not match matrix rows");
  }
  TagColumn column;
  std::size_t pos = 0;
  for (std::size_t len : matrix.utterance_lengths) {
    column.utterances.emplace_back(flat_tags.begin() + pos,
                                   flat_tags.begin() + pos + len);
    pos += len;
  }
  return column;
}

TaggerMatrix project(const TaggerMatrix& matrix,
                     const std::vector<std::size_t>& taggers) {
  TaggerMatrix out;
  for (std::size_t t : taggers) {
    if (t >= matrix.n_taggers()) {
      throw std::out_of_range("project: tagger index out of range");
    }
    out.tagger_ids.push_back(matrix.tagger_ids[t]);
  }
  out.utterance_lengths = matrix.utterance_lengths;
  out.rows.reserve(matrix.rows.size());
  for (const auto& row : matrix.rows) {
    MatrixRow r;
    r.token = row.token;
    r.gold = row.gold;
    r.suggestions.reserve(taggers.size());
    for (std::size_t t : taggers) r.suggestions.push_back(row.suggestions[t]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

MatrixSplit split_matrix(const TaggerMatrix& matrix) {
  MatrixSplit split;
  split.train.tagger_ids = matrix.tagger_ids;
  split.tune.tagger_ids = matrix.tagger_ids;
  split.test.tagger_ids = matrix.tagger_ids;
  const auto offsets = matrix.utterance_offsets();
  for (std::size_t u = 0; u < matrix.utterance_lengths.size(); ++u) {
    TaggerMatrix* target = nullptr;
    switch (u % 10) {
      case 8: target = &split.tune; break;
      case 9: target = &split.test; break;
      default: target = &split.train; break;
    }
    target->utterance_lengths.push_back(matrix.utterance_lengths[u]);
    for (std::size_t i = 0; i < matrix.utterance_lengths[u]; ++i) {
      target->rows.push_back(matrix.rows[offsets[u] + i]);
    }
  }
  return split;
}

TaggerMatrix parse_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty matrix file", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_fields(line, '\t');
  if (header.size() < 2 || header[0] != "#taggers") {
    throw ParseError("matrix header must be '#taggers<TAB>id...'", line_no);
  }
  TaggerMatrix matrix;
  matrix.tagger_ids.assign(header.begin() + 1, header.end());
  const std::size_t n = matrix.tagger_ids.size();

  std::size_t current_len = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (current_len == 0) throw ParseError("empty utterance in matrix", line_no);
      matrix.utterance_lengths.push_back(current_len);
      current_len = 0;
      continue;
    }
    auto fields = split_fields(line, '\t');
    if (fields.size() != 2 + n) {
      throw ParseError("matrix row needs " + std::to_string(2 + n) +
                           " fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    MatrixRow row;
    row.token = std::move(fields[0]);
    if (fields[1] != kNoGold) row.gold = std::move(fields[1]);
    row.suggestions.assign(fields.begin() + 2, fields.end());
    matrix.rows.push_back(std::move(row));
    ++current_len;
  }
  if (current_len > 0) matrix.utterance_lengths.push_back(current_len);
  if (matrix.rows.empty()) throw ParseError("matrix has no rows", line_no);
  return matrix;
}

TaggerMatrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open matrix file: " + path);
  return parse_matrix(in);
}

void serialize_matrix(const TaggerMatrix& matrix, std::ostream& out) {
  out << "#taggers";
  for (const auto& id : matrix.tagger_ids) out << '\t' << id;
  out << '\n';
  std::size_t pos = 0;
  for (std::size_t u = 0; u < matrix.utterance_lengths.size(); ++u) {
    if (u > 0) out << '\n';
    for (std::size_t i = 0; i < matrix.utterance_lengths[u]; ++i, ++pos) {
      const auto& row = matrix.rows[pos];
      out << row.token << '\t' << (row.gold ? *row.gold : "-");
      for (const auto& s : row.suggestions) out << '\t' << s;
      out << '\n';
    }
  }
}

void save_matrix(const TaggerMatrix& matrix, const std::string& path) {
  std::ostringstream ss;
  serialize_matrix(matrix, ss);
  write_file(path, ss.str());
}

} // namespace combitag
