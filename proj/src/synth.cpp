#include "combitag/synth.hpp"

#include "combitag/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace combitag {

namespace {

// Cumulative-weight sampler over 0..n-1.
class WeightedSampler {
public:
  explicit WeightedSampler(const std::vector<double>& weights) {
    cumulative_.reserve(weights.size());
    double sum = 0.0;
    for (double w : weights) {
      sum += w;
      cumulative_.push_back(sum);
    }
    if (cumulative_.empty() || sum <= 0.0) {
      throw std::invalid_argument("WeightedSampler: no positive weights");
    }
  }

  std::size_t sample(Rng& rng) const {
    double u = rng.uniform01() * cumulative_.back();
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

private:
  std::vector<double> cumulative_;
};

std::string tag_name(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "T%02zu", i);
  return buf;
}

// Tag-flavoured two-letter ending, a stand-in for inflectional morphology.
std::string tag_suffix(std::size_t tag) {
  std::string s;
  s += static_cast<char>('a' + (tag * 7 + 1) % 26);
  s += static_cast<char>('a' + (tag * 3 + 5) % 26);
  return s;
}

std::string word_name(std::size_t i, const std::string& suffix) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "w%04zu", i);
  return buf + suffix;
}

} // namespace

SynthResult generate_synthetic(const SynthSpec& spec) {
  if (spec.tokens == 0) throw std::invalid_argument("synth: tokens must be > 0");
  if (spec.tagset_size < 2) throw std::invalid_argument("synth: need >= 2 tags");
  if (spec.vocabulary < spec.tagset_size) {
    throw std::invalid_argument("synth: vocabulary smaller than tagset");
  }
  if (spec.min_utterance == 0 || spec.min_utterance > spec.max_utterance) {
    throw std::invalid_argument("synth: bad utterance length range");
  }
  for (double a : spec.tagger_accuracies) {
    if (a <= 0.0 || a > 1.0) {
      throw std::invalid_argument("synth: tagger accuracy must be in (0,1]");
    }
  }

  const std::size_t n_tags = spec.tagset_size;
  Rng setup(mix_seed(spec.seed, 1));

  // First-order transition weights: each tag prefers a few successors; the
  // floor keeps the chain ergodic and the tag marginals within a small
  // factor of uniform.
  std::vector<WeightedSampler> transitions;
  transitions.reserve(n_tags + 1); // last entry = utterance-initial
  for (std::size_t prev = 0; prev <= n_tags; ++prev) {
    std::vector<double> w(n_tags);
    for (auto& x : w) {
      double u = setup.uniform01();
      x = 0.10 + u * u * u * u * u;
    }
    transitions.emplace_back(w);
  }

  // Zipfian types with ambiguity classes; most types carry the ending that
  // goes with their primary tag.
  const std::size_t n_types = spec.vocabulary;
  std::vector<std::vector<std::size_t>> type_tags(n_types);
  std::vector<std::string> type_suffix(n_types);
  std::vector<double> zipf(n_types);
  for (std::size_t k = 0; k < n_types; ++k) {
    zipf[k] = 1.0 / std::pow(static_cast<double>(k + 1), 1.1);
    std::size_t primary = setup.below(n_tags);
    type_tags[k].push_back(primary);
    if (setup.uniform01() < 0.35) {
      std::size_t extra = setup.below(n_tags);
      if (extra != primary) type_tags[k].push_back(extra);
    }
    if (setup.uniform01() < 0.10) {
      std::size_t extra = setup.below(n_tags);
      if (std::find(type_tags[k].begin(), type_tags[k].end(), extra) ==
          type_tags[k].end()) {
        type_tags[k].push_back(extra);
      }
    }
    if (setup.uniform01() < 0.7) {
      type_suffix[k] = tag_suffix(primary);
    } else {
      type_suffix[k] += static_cast<char>('a' + setup.below(26));
      type_suffix[k] += static_cast<char>('a' + setup.below(26));
    }
  }
  // Guarantee every tag can be emitted.
  for (std::size_t t = 0; t < n_tags; ++t) type_tags[t] = {t};

  // Per-tag emission samplers (secondary senses carry reduced weight).
  std::vector<std::vector<std::size_t>> emit_types(n_tags);
  std::vector<std::vector<double>> emit_weights(n_tags);
  for (std::size_t k = 0; k < n_types; ++k) {
    for (std::size_t s = 0; s < type_tags[k].size(); ++s) {
      std::size_t t = type_tags[k][s];
      emit_types[t].push_back(k);
      emit_weights[t].push_back(zipf[k] * (s == 0 ? 1.0 : 0.8));
    }
  }
  std::vector<WeightedSampler> emitters;
  emitters.reserve(n_tags);
  for (std::size_t t = 0; t < n_tags; ++t) emitters.emplace_back(emit_weights[t]);

  // Gold corpus.
  SynthResult result;
  Rng corpus_rng(mix_seed(spec.seed, 2));
  std::vector<std::size_t> gold_tags;
  gold_tags.reserve(spec.tokens + spec.max_utterance);
  while (result.gold.token_count() < spec.tokens) {
    std::size_t len = spec.min_utterance +
                      corpus_rng.below(spec.max_utterance - spec.min_utterance + 1);
    Utterance utt;
    utt.reserve(len);
    std::size_t prev = n_tags; // utterance-initial state
    for (std::size_t i = 0; i < len; ++i) {
      std::size_t t = transitions[prev].sample(corpus_rng);
      std::size_t type = emit_types[t][emitters[t].sample(corpus_rng)];
      utt.push_back({word_name(type + 1, type_suffix[type]), tag_name(t)});
      gold_tags.push_back(t);
      prev = t;
    }
    result.gold.utterances.push_back(std::move(utt));
  }

  // Simulated tagger columns; independent stream per tagger. The systematic
  // confusion targets are assigned jointly so that no two taggers share a
  // preferred wrong answer for the same gold tag (disjoint error injection);
  // the remaining error mass is uniform and unconstrained.
  const std::size_t n_taggers = spec.tagger_accuracies.size();
  result.tagger_ids = spec.tagger_ids;
  if (result.tagger_ids.empty()) {
    for (std::size_t i = 0; i < n_taggers; ++i) {
      result.tagger_ids.push_back("t" + std::to_string(i + 1));
    }
  }
  if (result.tagger_ids.size() != n_taggers) {
    throw std::invalid_argument("synth: tagger id / accuracy count mismatch");
  }

  std::vector<std::vector<std::size_t>> confusion(n_taggers,
                                                  std::vector<std::size_t>(n_tags));
  {
    Rng confusion_rng(mix_seed(spec.seed, 3));
    std::vector<std::size_t> others(n_tags - 1);
    for (std::size_t g = 0; g < n_tags; ++g) {
      for (std::size_t k = 0, v = 0; v < n_tags; ++v) {
        if (v != g) others[k++] = v;
      }
      for (std::size_t k = others.size() - 1; k > 0; --k) {
        std::swap(others[k], others[confusion_rng.below(k + 1)]);
      }
      for (std::size_t i = 0; i < n_taggers; ++i) {
        confusion[i][g] = others[i % others.size()];
      }
    }
  }

  for (std::size_t i = 0; i < n_taggers; ++i) {
    Rng tagger_rng(mix_seed(spec.seed, 1000 + i));
    const double acc = spec.tagger_accuracies[i];
    TagColumn column;
    std::size_t pos = 0;
    for (const auto& utt : result.gold.utterances) {
      std::vector<Tag> tags;
      tags.reserve(utt.size());
      for (std::size_t k = 0; k < utt.size(); ++k, ++pos) {
        std::size_t g = gold_tags[pos];
        std::size_t out;
        if (tagger_rng.uniform01() < acc) {
          out = g;
        } else if (tagger_rng.uniform01() < spec.confusion_bias) {
          out = confusion[i][g];
        } else {
          std::size_t c = tagger_rng.below(n_tags - 1);
          out = c >= g ? c + 1 : c;
        }
        tags.push_back(tag_name(out));
      }
      column.utterances.push_back(std::move(tags));
    }
    result.columns.push_back(std::move(column));
  }
  return result;
}

TaggedCorpus generate_corpus(std::size_t tokens, std::uint64_t seed,
                             std::size_t tagset_size, std::size_t vocabulary) {
  SynthSpec spec;
  spec.tokens = tokens;
  spec.seed = seed;
  spec.tagset_size = tagset_size;
  spec.vocabulary = vocabulary;
  return generate_synthetic(spec).gold;
}

} // namespace combitag
