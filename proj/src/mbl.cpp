#include "combitag/mbl.hpp"

#include "combitag/features.hpp"
#include "combitag/util.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace combitag {

std::string to_string(Metric metric) {
  return metric == Metric::overlap ? "overlap" : "ig-overlap";
}

Metric metric_from_string(const std::string& s) {
  if (s == "overlap") return Metric::overlap;
  if (s == "ig-overlap") return Metric::ig_overlap;
  throw std::invalid_argument("unknown metric: " + s);
}

namespace {

double entropy_bits(const std::map<std::string, std::int64_t>& counts,
                    std::int64_t total) {
  double h = 0.0;
  for (const auto& [value, count] : counts) {
    if (count == 0) continue;
    double p = static_cast<double>(count) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

} // namespace

std::vector<double> information_gain(const std::vector<Case>& cases) {
  if (cases.empty()) {
    throw std::invalid_argument("information_gain: no cases");
  }
  const std::size_t arity = cases[0].features.size();
  const std::int64_t n = static_cast<std::int64_t>(cases.size());

  std::map<std::string, std::int64_t> label_counts;
  for (const auto& c : cases) {
    if (c.features.size() != arity) {
      throw std::invalid_argument("information_gain: ragged case arity");
    }
    ++label_counts[c.label];
  }
  const double base_h = entropy_bits(label_counts, n);

  std::vector<double> weights(arity, 0.0);
  for (std::size_t f = 0; f < arity; ++f) {
    // value -> (label -> count)
    std::map<std::string, std::map<std::string, std::int64_t>> by_value;
    for (const auto& c : cases) ++by_value[c.features[f]][c.label];
    double conditional = 0.0;
    for (const auto& [value, counts] : by_value) {
      std::int64_t n_v = 0;
      for (const auto& [label, count] : counts) n_v += count;
      conditional += (static_cast<double>(n_v) / static_cast<double>(n)) *
                     entropy_bits(counts, n_v);
    }
    weights[f] = std::max(0.0, base_h - conditional);
  }
  return weights;
}

CaseBase CaseBase::build(std::vector<std::string> schema,
                         const std::vector<Case>& cases, Metric metric) {
  if (cases.empty()) throw std::invalid_argument("CaseBase: no cases");
  CaseBase base;
  base.schema_ = std::move(schema);
  base.metric_ = metric;
  base.n_cases_ = cases.size();
  const std::size_t arity = base.schema_.size();

  std::map<std::string, std::int64_t> label_counts;
  for (const auto& c : cases) {
    if (c.features.size() != arity) {
      throw std::invalid_argument("CaseBase: case arity does not match schema");
    }
    ++label_counts[c.label];
  }
  for (const auto& [label, count] : label_counts) {
    base.label_names_.push_back(label);
    base.label_freq_.push_back(count);
  }

  base.data_.reserve(cases.size() * arity);
  base.labels_.reserve(cases.size());
  for (const auto& c : cases) {
    for (const auto& v : c.features) {
      auto [it, inserted] = base.value_ids_.try_emplace(
          v, static_cast<std::int32_t>(base.value_names_.size()));
      if (inserted) base.value_names_.push_back(v);
      base.data_.push_back(it->second);
    }
    auto label_it =
        std::lower_bound(base.label_names_.begin(), base.label_names_.end(), c.label);
    base.labels_.push_back(
        static_cast<std::int32_t>(label_it - base.label_names_.begin()));
  }

  base.ig_weights_ = information_gain(cases);
  base.metric_weights_.assign(arity, 1.0);
  if (metric == Metric::ig_overlap) base.metric_weights_ = base.ig_weights_;
  base.build_index();
  return base;
}

void CaseBase::build_index() {
  const std::size_t arity = schema_.size();
  postings_.assign(arity, {});
  for (std::size_t c = 0; c < n_cases_; ++c) {
    for (std::size_t f = 0; f < arity; ++f) {
      postings_[f][data_[c * arity + f]].push_back(static_cast<std::int32_t>(c));
    }
  }
}

CaseBase::Result CaseBase::classify(std::span<const std::string> instance) const {
  const std::size_t arity = schema_.size();
  if (instance.size() != arity) {
    throw std::invalid_argument("classify: instance arity " +
                                std::to_string(instance.size()) +
                                " does not match schema arity " +
                                std::to_string(arity));
  }
  if (n_cases_ == 0) throw std::invalid_argument("classify: empty case base");

  double total_weight = 0.0;
  for (double w : metric_weights_) total_weight += w;

  // Accumulate per-case matched weight in feature order; cases never touched
  // keep similarity 0.
  std::vector<double> sim(n_cases_, 0.0);
  std::vector<std::int32_t> touched;
  for (std::size_t f = 0; f < arity; ++f) {
    const double w = metric_weights_[f];
    if (w <= 0.0) continue;
    auto vit = value_ids_.find(instance[f]);
    if (vit == value_ids_.end()) continue;
    auto pit = postings_[f].find(vit->second);
    if (pit == postings_[f].end()) continue;
    for (std::int32_t c : pit->second) {
      if (sim[c] == 0.0) touched.push_back(c);
      sim[c] += w;
    }
  }

  std::vector<std::int64_t> nearest_counts(label_names_.size(), 0);
  std::int64_t nearest_total = 0;
  double best = 0.0;
  if (touched.empty()) {
    // No positively weighted feature matches any case: every case is equally
    // near, so the nearest set is the whole base.
    nearest_counts.assign(label_freq_.begin(), label_freq_.end());
    nearest_total = static_cast<std::int64_t>(n_cases_);
  } else {
    for (std::int32_t c : touched) best = std::max(best, sim[c]);
    for (std::int32_t c : touched) {
      if (sim[c] == best) {
        ++nearest_counts[labels_[c]];
        ++nearest_total;
      }
    }
  }

  // Modal label; ties go to the label more frequent in the whole base, then
  // to the lexicographically smaller name.
  std::size_t best_label = 0;
  bool have = false;
  for (std::size_t l = 0; l < nearest_counts.size(); ++l) {
    if (nearest_counts[l] == 0) continue;
    if (!have || nearest_counts[l] > nearest_counts[best_label] ||
        (nearest_counts[l] == nearest_counts[best_label] &&
         label_freq_[l] > label_freq_[best_label])) {
      best_label = l;
      have = true;
    }
  }

  Result result;
  result.label = label_names_[best_label];
  result.distance = total_weight - best;
  for (std::size_t l = 0; l < nearest_counts.size(); ++l) {
    if (nearest_counts[l] == 0) continue;
    result.distribution.emplace_back(
        label_names_[l], static_cast<double>(nearest_counts[l]) /
                             static_cast<double>(nearest_total));
  }
  return result;
}

void CaseBase::write(std::ostream& out) const {
  const std::size_t arity = schema_.size();
  out << "casebase v1\n";
  out << "metric\t" << to_string(metric_) << '\n';
  out << "arity\t" << arity << '\n';
  out << "schema";
  for (const auto& s : schema_) out << '\t' << s;
  out << '\n';
  out << "cases\t" << n_cases_ << '\n';
  for (std::size_t c = 0; c < n_cases_; ++c) {
    out << label_names_[labels_[c]];
    for (std::size_t f = 0; f < arity; ++f) {
      out << '\t' << value_names_[data_[c * arity + f]];
    }
    out << '\n';
  }
}

CaseBase CaseBase::read(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) {
      throw IoError(std::string("casebase: truncated at ") + what);
    }
    return split_fields(line, '\t');
  };
  if (!std::getline(in, line) || line != "casebase v1") {
    throw IoError("casebase: bad header");
  }
  auto metric_fields = next_line("metric");
  if (metric_fields.size() != 2 || metric_fields[0] != "metric") {
    throw IoError("casebase: bad metric line");
  }
  Metric metric = metric_from_string(metric_fields[1]);
  auto arity_fields = next_line("arity");
  if (arity_fields.size() != 2 || arity_fields[0] != "arity") {
    throw IoError("casebase: bad arity line");
  }
  std::size_t arity = std::stoul(arity_fields[1]);
  auto schema_fields = next_line("schema");
  if (schema_fields.size() != arity + 1 || schema_fields[0] != "schema") {
    throw IoError("casebase: bad schema line");
  }
  std::vector<std::string> schema(schema_fields.begin() + 1, schema_fields.end());
  auto count_fields = next_line("cases");
  if (count_fields.size() != 2 || count_fields[0] != "cases") {
    throw IoError("casebase: bad case count line");
  }
  std::size_t n = std::stoul(count_fields[1]);
  std::vector<Case> cases;
  cases.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    auto fields = next_line("case row");
    if (fields.size() != arity + 1) throw IoError("casebase: bad case row");
    Case cs;
    cs.label = fields[0];
    cs.features.assign(fields.begin() + 1, fields.end());
    cases.push_back(std::move(cs));
  }
  return build(std::move(schema), cases, metric);
}

CaseBase build_known_base(const TaggedCorpus& train, const Lexicon& lexicon) {
  std::vector<Case> cases;
  cases.reserve(train.token_count());
  for (const auto& utt : train.utterances) {
    std::vector<std::string> tokens;
    std::vector<Tag> gold;
    tokens.reserve(utt.size());
    gold.reserve(utt.size());
    for (const auto& tt : utt) {
      tokens.push_back(tt.token);
      gold.push_back(tt.tag);
    }
    for (std::size_t i = 0; i < utt.size(); ++i) {
      cases.push_back({known_features(lexicon, tokens, gold, i), gold[i]});
    }
  }
  return CaseBase::build(known_schema(), cases, Metric::ig_overlap);
}

CaseBase build_unknown_base(const TaggedCorpus& train, const Lexicon& lexicon,
                            std::int64_t max_frequency) {
  std::vector<Case> cases;
  // Rare training tokens stand in for unseen words.
  for (const auto& utt : train.utterances) {
    for (std::size_t i = 0; i < utt.size(); ++i) {
      if (lexicon.frequency(utt[i].token) > max_frequency) continue;
      cases.push_back(
          {unknown_features(utt[i].token, i >= 1 ? utt[i - 1].tag : kOutOfBounds,
                            i + 1 < utt.size() ? utt[i + 1].token : kOutOfBounds),
           utt[i].tag});
    }
  }
  if (cases.empty()) {
    // Degenerate corpora without rare tokens: use every token instead.
    for (const auto& utt : train.utterances) {
      for (std::size_t i = 0; i < utt.size(); ++i) {
        cases.push_back(
            {unknown_features(utt[i].token,
                              i >= 1 ? utt[i - 1].tag : kOutOfBounds,
                              i + 1 < utt.size() ? utt[i + 1].token : kOutOfBounds),
             utt[i].tag});
      }
    }
  }
  return CaseBase::build(unknown_schema(), cases, Metric::ig_overlap);
}

TaggerM train_tagger_m(const TaggedCorpus& train) {
  if (train.utterances.empty()) {
    throw std::invalid_argument("train_tagger_m: empty corpus");
  }
  TaggerM tagger;
  tagger.lexicon = build_lexicon(train);
  tagger.known = build_known_base(train, tagger.lexicon);
  tagger.unknown = build_unknown_base(train, tagger.lexicon);
  return tagger;
}

std::vector<Tag> tag_utterance_m(const TaggerM& tagger,
                                 const std::vector<std::string>& tokens) {
  std::vector<Tag> assigned;
  assigned.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tagger.lexicon.contains(tokens[i])) {
      auto features = known_features(tagger.lexicon, tokens, assigned, i);
      assigned.push_back(tagger.known.classify(features).label);
    } else {
      auto features = unknown_features(
          tokens[i], i >= 1 ? assigned[i - 1] : kOutOfBounds,
          i + 1 < tokens.size() ? tokens[i + 1] : kOutOfBounds);
      assigned.push_back(tagger.unknown.classify(features).label);
    }
  }
  return assigned;
}

TagColumn tag_corpus_m(const TaggerM& tagger, const TokenSeqs& input, Exec exec) {
  TagColumn column;
  column.utterances.resize(input.size());
  for_each_index(exec, input.size(), [&](std::size_t u) {
    column.utterances[u] = tag_utterance_m(tagger, input[u]);
  });
  return column;
}

TagDist propose_unknown(const CaseBase& unknown_base, const std::string& token,
                        const std::string& left_tag) {
  auto result = unknown_base.classify(unknown_features(token, left_tag, kOutOfBounds));
  TagDist dist;
  for (const auto& [tag, p] : result.distribution) dist[tag] = p;
  return dist;
}

TagDist propose_unknown(const TaggerM& tagger, const std::string& token,
                        const std::string& left_tag) {
  return propose_unknown(tagger.unknown, token, left_tag);
}

} // namespace combitag
