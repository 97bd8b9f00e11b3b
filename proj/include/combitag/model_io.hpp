#ifndef COMBITAG_MODEL_IO_HPP
#define COMBITAG_MODEL_IO_HPP

#include "combitag/mbl.hpp"
#include "combitag/trigram.hpp"

#include <string>

namespace combitag {

// Tagger T bundle: the interpolated context/lexical model plus the case base
// behind the unknown-word proposer.
struct TaggerT {
  TrigramModel model;
  CaseBase unknown;
};

void save_tagger_t(const TaggerT& tagger, const std::string& path);
TaggerT load_tagger_t(const std::string& path);

void save_tagger_m(const TaggerM& tagger, const std::string& path);
TaggerM load_tagger_m(const std::string& path);

} // namespace combitag

#endif
