#include "combitag/trigram.hpp"

#include "combitag/features.hpp"
#include "combitag/util.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace combitag {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 21 bits per tag id; tagsets here are a few hundred tags at most.
std::uint64_t key2(std::int32_t a, std::int32_t b) {
  return (static_cast<std::uint64_t>(a) << 21) | static_cast<std::uint64_t>(b);
}

std::uint64_t key3(std::int32_t a, std::int32_t b, std::int32_t c) {
  return (static_cast<std::uint64_t>(a) << 42) |
         (static_cast<std::uint64_t>(b) << 21) | static_cast<std::uint64_t>(c);
}

} // namespace

TrigramModel TrigramModel::train(const TaggedCorpus& train,
                                 std::array<double, 3> lambdas) {
  if (train.utterances.empty()) {
    throw std::invalid_argument("TrigramModel: empty training corpus");
  }
  const double lambda_sum = lambdas[0] + lambdas[1] + lambdas[2];
  if (std::abs(lambda_sum - 1.0) > 1e-9) {
    throw std::invalid_argument("TrigramModel: interpolation weights must sum to 1");
  }
  for (double l : lambdas) {
    if (l < 0.0 || l > 1.0) {
      throw std::invalid_argument("TrigramModel: interpolation weights must be in [0,1]");
    }
  }

  TrigramModel model;
  model.lambdas_ = lambdas;
  model.lexicon_ = build_lexicon(train);
  model.tag_names_.push_back(kBoundaryTag);
  model.tag_ids_[kBoundaryTag] = 0;
  auto intern = [&model](const Tag& tag) {
    auto [it, inserted] = model.tag_ids_.try_emplace(
        tag, static_cast<std::int32_t>(model.tag_names_.size()));
    if (inserted) model.tag_names_.push_back(tag);
    return it->second;
  };

  for (const auto& utt : train.utterances) {
    std::int32_t p1 = 0;
    std::int32_t p2 = 0;
    for (const auto& tt : utt) {
      if (tt.tag == kBoundaryTag) {
        throw std::invalid_argument("TrigramModel: corpus uses the reserved tag " +
                                    kBoundaryTag);
      }
      std::int32_t t = intern(tt.tag);
      ++model.trigram_[key3(p2, p1, t)];
      ++model.bigram_[key2(p1, t)];
      ++model.context2_[key2(p2, p1)];
      ++model.total_tokens_;
      p2 = p1;
      p1 = t;
    }
  }
  model.context1_.assign(model.tag_names_.size(), 0);
  model.unigram_.assign(model.tag_names_.size(), 0);
  for (const auto& [key, count] : model.bigram_) {
    model.context1_[key >> 21] += count;
    model.unigram_[key & ((1u << 21) - 1)] += count;
  }
  return model;
}

std::int32_t TrigramModel::tag_id(const Tag& tag) const {
  auto it = tag_ids_.find(tag);
  return it == tag_ids_.end() ? -1 : it->second;
}

double TrigramModel::context_prob_ids(std::int32_t t, std::int32_t p1,
                                      std::int32_t p2) const {
  if (t < 0) return 0.0;
  double f3 = 0.0;
  double f2 = 0.0;
  if (p1 >= 0 && p2 >= 0) {
    auto ctx = context2_.find(key2(p2, p1));
    if (ctx != context2_.end()) {
      auto tri = trigram_.find(key3(p2, p1, t));
      if (tri != trigram_.end()) {
        f3 = static_cast<double>(tri->second) / static_cast<double>(ctx->second);
      }
    }
  }
  if (p1 >= 0 && context1_[p1] > 0) {
    auto bi = bigram_.find(key2(p1, t));
    if (bi != bigram_.end()) {
      f2 = static_cast<double>(bi->second) / static_cast<double>(context1_[p1]);
    }
  }
  double f1 = static_cast<double>(unigram_[t]) / static_cast<double>(total_tokens_);
  return lambdas_[0] * f3 + lambdas_[1] * f2 + lambdas_[2] * f1;
}

double TrigramModel::context_prob(const Tag& tag, const Tag& prev1,
                                  const Tag& prev2) const {
  return context_prob_ids(tag_id(tag), tag_id(prev1), tag_id(prev2));
}

std::map<Tag, double> TrigramModel::context_distribution(const Tag& prev1,
                                                         const Tag& prev2) const {
  std::map<Tag, double> dist;
  std::int32_t p1 = tag_id(prev1);
  std::int32_t p2 = tag_id(prev2);
  if (p1 < 0 || p2 < 0) return dist;
  auto ctx = context2_.find(key2(p2, p1));
  if (ctx == context2_.end()) return dist;
  for (std::size_t t = 1; t < tag_names_.size(); ++t) {
    auto tri = trigram_.find(key3(p2, p1, static_cast<std::int32_t>(t)));
    if (tri != trigram_.end()) {
      dist[tag_names_[t]] =
          static_cast<double>(tri->second) / static_cast<double>(ctx->second);
    }
  }
  return dist;
}

std::map<Tag, double> TrigramModel::bigram_distribution(const Tag& prev1) const {
  std::map<Tag, double> dist;
  std::int32_t p1 = tag_id(prev1);
  if (p1 < 0 || context1_[p1] == 0) return dist;
  for (std::size_t t = 1; t < tag_names_.size(); ++t) {
    auto bi = bigram_.find(key2(p1, static_cast<std::int32_t>(t)));
    if (bi != bigram_.end()) {
      dist[tag_names_[t]] =
          static_cast<double>(bi->second) / static_cast<double>(context1_[p1]);
    }
  }
  return dist;
}

std::map<Tag, double> TrigramModel::unigram_distribution() const {
  std::map<Tag, double> dist;
  for (std::size_t t = 1; t < tag_names_.size(); ++t) {
    if (unigram_[t] > 0) {
      dist[tag_names_[t]] =
          static_cast<double>(unigram_[t]) / static_cast<double>(total_tokens_);
    }
  }
  return dist;
}

Proposer proposer_from(const CaseBase& unknown_base) {
  const CaseBase* base = &unknown_base;
  return [base](const std::string& token) {
    return propose_unknown(*base, token, kOutOfBounds);
  };
}

Proposer proposer_from(const TaggerM& tagger) { return proposer_from(tagger.unknown); }

std::vector<Tag> viterbi_tag(const TrigramModel& model,
                             const std::vector<std::string>& tokens,
                             const Proposer& proposer) {
  if (tokens.empty()) {
    throw std::invalid_argument("viterbi_tag: empty token sequence");
  }
  const std::size_t n = tokens.size();

  struct Candidate {
    Tag tag;
    std::int32_t id;
    double log_lex;
  };
  std::vector<std::vector<Candidate>> cand(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto* tags = model.lexicon().tags_of(tokens[i])) {
      std::int64_t total = 0;
      for (const auto& [tag, count] : *tags) total += count;
      for (const auto& [tag, count] : *tags) {
        cand[i].push_back({tag, model.tag_id(tag),
                           std::log(static_cast<double>(count) /
                                    static_cast<double>(total))});
      }
    } else {
      TagDist dist = proposer(tokens[i]);
      for (const auto& [tag, p] : dist) {
        if (p > 0.0) cand[i].push_back({tag, model.tag_id(tag), std::log(p)});
      }
    }
    if (cand[i].empty()) {
      throw TagError("no candidate tags for token '" + tokens[i] + "'");
    }
    // Lexicon maps and TagDist are ordered, so candidates arrive sorted; the
    // tie rules below depend on that.
  }

  // delta[u * |cand_i| + v] for state (t_{i-1}=u, t_i=v); position 0 keyed by
  // v alone with the boundary as predecessor.
  std::vector<double> prev_delta;
  std::vector<double> delta;
  std::vector<std::vector<std::int32_t>> back(n); // argmax w per state, i >= 2

  prev_delta.resize(cand[0].size());
  for (std::size_t v = 0; v < cand[0].size(); ++v) {
    prev_delta[v] = std::log(model.context_prob_ids(cand[0][v].id, 0, 0)) +
                    cand[0][v].log_lex;
  }
  if (n == 1) {
    std::size_t best = 0;
    for (std::size_t v = 1; v < cand[0].size(); ++v) {
      if (prev_delta[v] > prev_delta[best]) best = v;
    }
    return {cand[0][best].tag};
  }

  for (std::size_t i = 1; i < n; ++i) {
    const auto& cu = cand[i - 1];
    const auto& cv = cand[i];
    delta.assign(cu.size() * cv.size(), kNegInf);
    if (i >= 2) back[i].assign(cu.size() * cv.size(), 0);
    const auto& cw = i >= 2 ? cand[i - 2] : cand[0]; // unused when i == 1
    for (std::size_t u = 0; u < cu.size(); ++u) {
      for (std::size_t v = 0; v < cv.size(); ++v) {
        double best_score;
        if (i == 1) {
          best_score = prev_delta[u] +
                       std::log(model.context_prob_ids(cv[v].id, cu[u].id, 0)) +
                       cv[v].log_lex;
        } else {
          best_score = kNegInf;
          std::int32_t best_w = 0;
          for (std::size_t w = 0; w < cw.size(); ++w) {
            double score =
                prev_delta[w * cu.size() + u] +
                std::log(model.context_prob_ids(cv[v].id, cu[u].id, cw[w].id)) +
                cv[v].log_lex;
            if (score > best_score) {
              best_score = score;
              best_w = static_cast<std::int32_t>(w);
            }
          }
          back[i][u * cv.size() + v] = best_w;
        }
        delta[u * cv.size() + v] = best_score;
      }
    }
    prev_delta = delta;
  }

  // Final state: best (u, v), ties to the lexicographically smaller pair.
  const auto& cu = cand[n - 2];
  const auto& cv = cand[n - 1];
  std::size_t best_u = 0;
  std::size_t best_v = 0;
  double best = kNegInf;
  bool found = false;
  for (std::size_t u = 0; u < cu.size(); ++u) {
    for (std::size_t v = 0; v < cv.size(); ++v) {
      double score = prev_delta[u * cv.size() + v];
      if (!found || score > best) {
        best = score;
        best_u = u;
        best_v = v;
        found = true;
      }
    }
  }

  std::vector<std::int32_t> chosen(n);
  chosen[n - 1] = static_cast<std::int32_t>(best_v);
  chosen[n - 2] = static_cast<std::int32_t>(best_u);
  for (std::size_t i = n - 1; i >= 2; --i) {
    chosen[i - 2] = back[i][chosen[i - 1] * cand[i].size() + chosen[i]];
  }

  std::vector<Tag> result;
  result.reserve(n);
  for (std::size_t i = 0; i < n; ++i) result.push_back(cand[i][chosen[i]].tag);
  return result;
}

TagColumn tag_corpus_t(const TrigramModel& model, const Proposer& proposer,
                       const TokenSeqs& input, Exec exec) {
  TagColumn column;
  column.utterances.resize(input.size());
  for_each_index(exec, input.size(), [&](std::size_t u) {
    column.utterances[u] = viterbi_tag(model, input[u], proposer);
  });
  return column;
}

void TrigramModel::write(std::ostream& out) const {
  out << "trigram v1\n";
  out << "lambdas";
  char buf[64];
  for (double l : lambdas_) {
    std::snprintf(buf, sizeof(buf), "%.17g", l);
    out << '\t' << buf;
  }
  out << '\n';
  out << "tags\t" << tag_names_.size() - 1 << '\n';
  for (std::size_t t = 1; t < tag_names_.size(); ++t) {
    out << tag_names_[t] << '\t' << unigram_[t] << '\n';
  }
  out << "bigrams\t" << bigram_.size() << '\n';
  for (std::size_t p1 = 0; p1 < tag_names_.size(); ++p1) {
    for (std::size_t t = 1; t < tag_names_.size(); ++t) {
      auto it = bigram_.find(key2(static_cast<std::int32_t>(p1),
                                  static_cast<std::int32_t>(t)));
      if (it != bigram_.end()) {
        out << tag_names_[p1] << '\t' << tag_names_[t] << '\t' << it->second << '\n';
      }
    }
  }
  out << "trigrams\t" << trigram_.size() << '\n';
  for (std::size_t p2 = 0; p2 < tag_names_.size(); ++p2) {
    for (std::size_t p1 = 0; p1 < tag_names_.size(); ++p1) {
      for (std::size_t t = 1; t < tag_names_.size(); ++t) {
        auto it = trigram_.find(key3(static_cast<std::int32_t>(p2),
                                     static_cast<std::int32_t>(p1),
                                     static_cast<std::int32_t>(t)));
        if (it != trigram_.end()) {
          out << tag_names_[p2] << '\t' << tag_names_[p1] << '\t' << tag_names_[t]
              << '\t' << it->second << '\n';
        }
      }
    }
  }
  std::vector<std::string> words;
  words.reserve(lexicon_.entries().size());
  for (const auto& [word, counts] : lexicon_.entries()) words.push_back(word);
  std::sort(words.begin(), words.end());
  std::size_t lex_lines = 0;
  for (const auto& word : words) lex_lines += lexicon_.tags_of(word)->size();
  out << "lexicon\t" << lex_lines << '\n';
  for (const auto& word : words) {
    for (const auto& [tag, count] : *lexicon_.tags_of(word)) {
      out << word << '\t' << tag << '\t' << count << '\n';
    }
  }
}

TrigramModel TrigramModel::read(std::istream& in) {
  std::string line;
  auto fields_of = [&](const char* what) {
    if (!std::getline(in, line)) {
      throw IoError(std::string("trigram model: truncated at ") + what);
    }
    return split_fields(line, '\t');
  };
  if (!std::getline(in, line) || line != "trigram v1") {
    throw IoError("trigram model: bad header");
  }

  TrigramModel model;
  auto lambda_fields = fields_of("lambdas");
  if (lambda_fields.size() != 4 || lambda_fields[0] != "lambdas") {
    throw IoError("trigram model: bad lambdas line");
  }
  for (int i = 0; i < 3; ++i) model.lambdas_[i] = std::stod(lambda_fields[i + 1]);

  model.tag_names_.push_back(kBoundaryTag);
  model.tag_ids_[kBoundaryTag] = 0;
  auto intern = [&model](const Tag& tag) {
    auto [it, inserted] = model.tag_ids_.try_emplace(
        tag, static_cast<std::int32_t>(model.tag_names_.size()));
    if (inserted) model.tag_names_.push_back(tag);
    return it->second;
  };

  auto tag_header = fields_of("tags");
  if (tag_header.size() != 2 || tag_header[0] != "tags") {
    throw IoError("trigram model: bad tags header");
  }
  std::size_t n_tags = std::stoul(tag_header[1]);
  std::vector<std::pair<std::int32_t, std::int64_t>> unigram_entries;
  for (std::size_t i = 0; i < n_tags; ++i) {
    auto f = fields_of("tag row");
    if (f.size() != 2) throw IoError("trigram model: bad tag row");
    unigram_entries.emplace_back(intern(f[0]), std::stoll(f[1]));
  }

  auto bigram_header = fields_of("bigrams");
  if (bigram_header.size() != 2 || bigram_header[0] != "bigrams") {
    throw IoError("trigram model: bad bigrams header");
  }
  std::size_t n_bigrams = std::stoul(bigram_header[1]);
  for (std::size_t i = 0; i < n_bigrams; ++i) {
    auto f = fields_of("bigram row");
    if (f.size() != 3) throw IoError("trigram model: bad bigram row");
    model.bigram_[key2(intern(f[0]), intern(f[1]))] = std::stoll(f[2]);
  }

  auto trigram_header = fields_of("trigrams");
  if (trigram_header.size() != 2 || trigram_header[0] != "trigrams") {
    throw IoError("trigram model: bad trigrams header");
  }
  std::size_t n_trigrams = std::stoul(trigram_header[1]);
  for (std::size_t i = 0; i < n_trigrams; ++i) {
    auto f = fields_of("trigram row");
    if (f.size() != 4) throw IoError("trigram model: bad trigram row");
    std::int64_t count = std::stoll(f[3]);
    model.trigram_[key3(intern(f[0]), intern(f[1]), intern(f[2]))] = count;
    model.context2_[key2(intern(f[0]), intern(f[1]))] += count;
  }

  auto lex_header = fields_of("lexicon");
  if (lex_header.size() != 2 || lex_header[0] != "lexicon") {
    throw IoError("trigram model: bad lexicon header");
  }
  std::size_t n_lex = std::stoul(lex_header[1]);
  std::vector<std::tuple<std::string, Tag, std::int64_t>> lex_rows;
  lex_rows.reserve(n_lex);
  for (std::size_t i = 0; i < n_lex; ++i) {
    auto f = fields_of("lexicon row");
    if (f.size() != 3) throw IoError("trigram model: bad lexicon row");
    lex_rows.emplace_back(f[0], f[1], std::stoll(f[2]));
  }
  model.lexicon_ = lexicon_from_counts(lex_rows);

  model.context1_.assign(model.tag_names_.size(), 0);
  model.unigram_.assign(model.tag_names_.size(), 0);
  for (const auto& [key, count] : model.bigram_) {
    model.context1_[key >> 21] += count;
  }
  for (const auto& [id, count] : unigram_entries) model.unigram_[id] = count;
  model.total_tokens_ = 0;
  for (std::int64_t c : model.unigram_) model.total_tokens_ += c;
  return model;
}

} // namespace combitag
