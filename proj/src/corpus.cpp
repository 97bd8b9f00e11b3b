#include "combitag/corpus.hpp"

#include "combitag/util.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace combitag {

std::size_t TaggedCorpus::token_count() const {
  std::size_t n = 0;
  for (const auto& u : utterances) n += u.size();
  return n;
}

std::size_t TagColumn::tag_count() const {
  std::size_t n = 0;
  for (const auto& u : utterances) n += u.size();
  return n;
}

std::vector<Tag> TagColumn::flat() const {
  std::vector<Tag> out;
  out.reserve(tag_count());
  for (const auto& u : utterances) out.insert(out.end(), u.begin(), u.end());
  return out;
}

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace

TaggedCorpus parse_corpus(std::istream& in) {
  TaggedCorpus corpus;
  Utterance current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) {
      if (current.empty()) {
        throw ParseError("empty utterance (consecutive blank lines?)", line_no);
      }
      corpus.utterances.push_back(std::move(current));
      current.clear();
      continue;
    }
    auto fields = split_fields(line, '\t');
    if (fields.size() != 2) {
      throw ParseError("expected 2 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    if (fields[0].empty()) throw ParseError("empty token", line_no);
    if (fields[1].empty()) throw ParseError("empty tag", line_no);
    current.push_back({std::move(fields[0]), std::move(fields[1])});
  }
  if (!current.empty()) corpus.utterances.push_back(std::move(current));
  if (corpus.utterances.empty()) {
    throw ParseError("empty corpus", line_no);
  }
  return corpus;
}

TaggedCorpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path);
  return parse_corpus(in);
}

void serialize_corpus(const TaggedCorpus& corpus, std::ostream& out) {
  for (std::size_t i = 0; i < corpus.utterances.size(); ++i) {
    if (i > 0) out << '\n';
    for (const auto& tt : corpus.utterances[i]) {
      out << tt.token << '\t' << tt.tag << '\n';
    }
  }
}

void save_corpus(const TaggedCorpus& corpus, const std::string& path) {
  std::ostringstream ss;
  serialize_corpus(corpus, ss);
  write_file(path, ss.str());
}

CorpusSplit split_corpus(const TaggedCorpus& corpus) {
  CorpusSplit split;
  for (std::size_t i = 0; i < corpus.utterances.size(); ++i) {
    switch (i % 10) {
      case 8:
        split.tune.utterances.push_back(corpus.utterances[i]);
        break;
      case 9:
        split.test.utterances.push_back(corpus.utterances[i]);
        break;
      default:
        split.train.utterances.push_back(corpus.utterances[i]);
        break;
    }
  }
  return split;
}

TagColumn parse_column(std::istream& in) {
  TagColumn column;
  std::vector<Tag> current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) {
      if (current.empty()) {
        throw ParseError("empty utterance block in column", line_no);
      }
      column.utterances.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (line.find('\t') != std::string::npos) {
      throw ParseError("tag column line contains a tab", line_no);
    }
    current.push_back(line);
  }
  if (!current.empty()) column.utterances.push_back(std::move(current));
  if (column.utterances.empty()) throw ParseError("empty column", line_no);
  return column;
}

TagColumn load_column(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open column file: " + path);
  return parse_column(in);
}

void serialize_column(const TagColumn& column, std::ostream& out) {
  for (std::size_t i = 0; i < column.utterances.size(); ++i) {
    if (i > 0) out << '\n';
    for (const auto& tag : column.utterances[i]) out << tag << '\n';
  }
}

void save_column(const TagColumn& column, const std::string& path) {
  std::ostringstream ss;
  serialize_column(column, ss);
  write_file(path, ss.str());
}

TokenSeqs tokens_of(const TaggedCorpus& corpus) {
  TokenSeqs out;
  out.reserve(corpus.utterances.size());
  for (const auto& u : corpus.utterances) {
    std::vector<std::string> tokens;
    tokens.reserve(u.size());
    for (const auto& tt : u) tokens.push_back(tt.token);
    out.push_back(std::move(tokens));
  }
  return out;
}

TagColumn gold_of(const TaggedCorpus& corpus) {
  TagColumn out;
  out.utterances.reserve(corpus.utterances.size());
  for (const auto& u : corpus.utterances) {
    std::vector<Tag> tags;
    tags.reserve(u.size());
    for (const auto& tt : u) tags.push_back(tt.tag);
    out.utterances.push_back(std::move(tags));
  }
  return out;
}

TokenSeqs load_tokens(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path);
  TokenSeqs out;
  std::vector<std::string> current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) {
      if (current.empty()) throw ParseError("empty utterance", line_no);
      out.push_back(std::move(current));
      current.clear();
      continue;
    }
    auto tab = line.find('\t');
    std::string token = tab == std::string::npos ? line : line.substr(0, tab);
    if (token.empty()) throw ParseError("empty token", line_no);
    current.push_back(std::move(token));
  }
  if (!current.empty()) out.push_back(std::move(current));
  if (out.empty()) throw ParseError("empty input", line_no);
  return out;
}

} // namespace combitag
