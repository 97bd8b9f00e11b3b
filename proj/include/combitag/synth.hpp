#ifndef COMBITAG_SYNTH_HPP
#define COMBITAG_SYNTH_HPP

#include "combitag/corpus.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace combitag {

// Seeded benchmark generator: Zipfian vocabulary whose types carry ambiguity
// classes, first-order Markov tag transitions, and simulated tagger columns
// with configurable accuracies. Each simulated tagger draws from its own
// stream and errs with a systematic per-tag confusion besides uniform noise,
// so pair statistics are learnable.
struct SynthSpec {
  std::size_t tokens = 50000;
  std::size_t tagset_size = 15;
  std::size_t vocabulary = 5000;
  std::size_t min_utterance = 5;
  std::size_t max_utterance = 25;
  std::vector<double> tagger_accuracies; // one simulated tagger per entry
  std::vector<std::string> tagger_ids;   // optional; defaults to "t1".."tN"
  double confusion_bias = 0.9;           // share of errors that hit the confusion tag
  std::uint64_t seed = 1;
};

struct SynthResult {
  TaggedCorpus gold;
  std::vector<TagColumn> columns;
  std::vector<std::string> tagger_ids;
};

SynthResult generate_synthetic(const SynthSpec& spec);

// Convenience for tests: gold corpus only.
TaggedCorpus generate_corpus(std::size_t tokens, std::uint64_t seed,
                             std::size_t tagset_size = 15,
                             std::size_t vocabulary = 5000);

} // namespace combitag

#endif
