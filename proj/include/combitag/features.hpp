#ifndef COMBITAG_FEATURES_HPP
#define COMBITAG_FEATURES_HPP

#include "combitag/corpus.hpp"
#include "combitag/lexicon.hpp"

#include <string>
#include <vector>

namespace combitag {

// Reserved feature symbols. Positions beyond an utterance edge take kOutOfBounds;
// a neighbour token absent from the lexicon renders as kUnknownWord.
inline const std::string kOutOfBounds = "__OOB__";
inline const std::string kUnknownWord = "__UNK__";

// Known-word schema: disambiguated left tags, the focus word itself, and the
// ambiguity classes of the two right neighbours.
std::vector<std::string> known_schema();

// Unknown-word schema: left tag, right word, the last three letters as
// separate features, and capital/hyphen/digit flags.
std::vector<std::string> unknown_schema();

std::vector<std::string> known_features(const Lexicon& lexicon,
                                        const std::vector<std::string>& tokens,
                                        const std::vector<Tag>& left_tags,
                                        std::size_t i);

std::vector<std::string> unknown_features(const std::string& token,
                                          const std::string& left_tag,
                                          const std::string& right_word);

// Proposer variant: neither left tag nor right word is available.
std::vector<std::string> unknown_features(const std::string& token);

} // namespace combitag

#endif
