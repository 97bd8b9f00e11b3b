#include "combitag/model_io.hpp"

#include "combitag/util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace combitag {

namespace {

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  std::vector<std::string> words;
  words.reserve(lexicon.entries().size());
  for (const auto& [word, counts] : lexicon.entries()) words.push_back(word);
  std::sort(words.begin(), words.end());
  std::size_t lines = 0;
  for (const auto& word : words) lines += lexicon.tags_of(word)->size();
  out << "lexicon\t" << lines << '\n';
  for (const auto& word : words) {
    for (const auto& [tag, count] : *lexicon.tags_of(word)) {
      out << word << '\t' << tag << '\t' << count << '\n';
    }
  }
}

Lexicon read_lexicon(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("model: missing lexicon header");
  auto header = split_fields(line, '\t');
  if (header.size() != 2 || header[0] != "lexicon") {
    throw IoError("model: bad lexicon header");
  }
  std::size_t n = std::stoul(header[1]);
  std::vector<std::tuple<std::string, Tag, std::int64_t>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw IoError("model: truncated lexicon");
    auto f = split_fields(line, '\t');
    if (f.size() != 3) throw IoError("model: bad lexicon row");
    rows.emplace_back(f[0], f[1], std::stoll(f[2]));
  }
  return lexicon_from_counts(rows);
}

void expect_line(std::istream& in, const std::string& expected,
                 const std::string& path) {
  std::string line;
  if (!std::getline(in, line) || line != expected) {
    throw IoError("unrecognized model file: " + path);
  }
}

} // namespace

void save_tagger_t(const TaggerT& tagger, const std::string& path) {
  std::ostringstream out;
  out << "combitag tagger-t v1\n";
  tagger.model.write(out);
  tagger.unknown.write(out);
  write_file(path, out.str());
}

TaggerT load_tagger_t(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  expect_line(in, "combitag tagger-t v1", path);
  TaggerT tagger;
  tagger.model = TrigramModel::read(in);
  tagger.unknown = CaseBase::read(in);
  return tagger;
}

void save_tagger_m(const TaggerM& tagger, const std::string& path) {
  std::ostringstream out;
  out << "combitag tagger-m v1\n";
  write_lexicon(out, tagger.lexicon);
  tagger.known.write(out);
  tagger.unknown.write(out);
  write_file(path, out.str());
}

TaggerM load_tagger_m(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  expect_line(in, "combitag tagger-m v1", path);
  TaggerM tagger;
  tagger.lexicon = read_lexicon(in);
  tagger.known = CaseBase::read(in);
  tagger.unknown = CaseBase::read(in);
  return tagger;
}

} // namespace combitag
