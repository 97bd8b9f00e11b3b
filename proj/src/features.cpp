#include "combitag/features.hpp"

#include <cctype>

namespace combitag {

std::vector<std::string> known_schema() {
  return {"tag-2", "tag-1", "word", "amb+1", "amb+2"};
}

std::vector<std::string> unknown_schema() {
  return {"tag-1", "word+1", "suf-3", "suf-2", "suf-1", "cap", "hyphen", "digit"};
}

namespace {

std::string right_ambiguity(const Lexicon& lexicon,
                            const std::vector<std::string>& tokens,
                            std::size_t i, std::size_t offset) {
  if (i + offset >= tokens.size()) return kOutOfBounds;
  const std::string& w = tokens[i + offset];
  if (!lexicon.contains(w)) return kUnknownWord;
  return lexicon.ambiguity_class(w);
}

std::string letter_at(const std::string& token, std::size_t from_end) {
  if (token.size() < from_end) return kOutOfBounds;
  return std::string(1, token[token.size() - from_end]);
}

bool has_class(const std::string& token, int (*pred)(int)) {
  for (unsigned char c : token) {
    if (pred(c)) return true;
  }
  return false;
}

} // namespace

std::vector<std::string> known_features(const Lexicon& lexicon,
                                        const std::vector<std::string>& tokens,
                                        const std::vector<Tag>& left_tags,
                                        std::size_t i) {
  std::vector<std::string> f;
  f.reserve(5);
  f.push_back(i >= 2 ? left_tags[i - 2] : kOutOfBounds);
  f.push_back(i >= 1 ? left_tags[i - 1] : kOutOfBounds);
  f.push_back(tokens[i]);
  f.push_back(right_ambiguity(lexicon, tokens, i, 1));
  f.push_back(right_ambiguity(lexicon, tokens, i, 2));
  return f;
}

std::vector<std::string> unknown_features(const std::string& token,
                                          const std::string& left_tag,
                                          const std::string& right_word) {
  std::vector<std::string> f;
  f.reserve(8);
  f.push_back(left_tag);
  f.push_back(right_word);
  f.push_back(letter_at(token, 3));
  f.push_back(letter_at(token, 2));
  f.push_back(letter_at(token, 1));
  f.push_back(has_class(token, std::isupper) ? "y" : "n");
  f.push_back(token.find('-') != std::string::npos ? "y" : "n");
  f.push_back(has_class(token, std::isdigit) ? "y" : "n");
  return f;
}

std::vector<std::string> unknown_features(const std::string& token) {
  return unknown_features(token, kOutOfBounds, kOutOfBounds);
}

} // namespace combitag
