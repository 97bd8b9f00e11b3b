#include "combitag/cli.hpp"

#include "combitag/combiner.hpp"
#include "combitag/eval.hpp"
#include "combitag/manifest.hpp"
#include "combitag/matrix.hpp"
#include "combitag/model_io.hpp"
#include "combitag/pairwise.hpp"
#include "combitag/stacker.hpp"
#include "combitag/synth.hpp"
#include "combitag/trigram.hpp"
#include "combitag/util.hpp"
#include "combitag/voting.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace combitag {

namespace {

std::vector<std::string> parse_list(const std::string& s) {
  if (s.empty()) return {};
  return split_fields(s, ',');
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& field : parse_list(s)) out.push_back(std::stod(field));
  return out;
}

std::array<double, 3> parse_lambdas(const std::string& s) {
  auto values = parse_doubles(s);
  if (values.size() != 3) {
    throw std::invalid_argument("--lambda needs three comma-separated weights");
  }
  return {values[0], values[1], values[2]};
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string fmt_p(double p) {
  if (p < 1e-12) return "<1e-12";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", p);
  return buf;
}

using ReportRows = std::vector<std::pair<std::string, std::string>>;

std::string render_report(const ReportRows& rows, const std::string& format) {
  std::ostringstream out;
  if (format == "machine") {
    for (const auto& [key, value] : rows) out << key << '\t' << value << '\n';
    return out.str();
  }
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  for (const auto& [key, value] : rows) {
    out << key;
    for (std::size_t i = key.size(); i < width + 2; ++i) out << ' ';
    out << value << '\n';
  }
  return out.str();
}

void deliver_report(const std::string& text,
                    const std::optional<std::string>& report_path,
                    const Manifest& manifest) {
  std::cout << text;
  if (report_path && !report_path->empty()) {
    write_file(*report_path, text);
    manifest.write_for(*report_path);
  }
}

struct GlobalOpts {
  bool serial = false;
  int threads = 0;

  Exec exec() const {
    if (threads > 0) set_threads(threads);
    return serial ? Exec::serial : Exec::parallel;
  }
};

// ---------------------------------------------------------------- synth ---

struct SynthOpts {
  std::size_t tokens = 50000;
  std::size_t taggers = 0;
  std::string acc;
  std::string ids;
  std::size_t tags = 15;
  std::size_t vocab = 5000;
  double confusion = 0.9;
  std::uint64_t seed = 1;
  std::string out_prefix;
};

void run_synth(const SynthOpts& opt) {
  SynthSpec spec;
  spec.tokens = opt.tokens;
  spec.tagset_size = opt.tags;
  spec.vocabulary = opt.vocab;
  spec.confusion_bias = opt.confusion;
  spec.seed = opt.seed;
  spec.tagger_accuracies = parse_doubles(opt.acc);
  spec.tagger_ids = parse_list(opt.ids);
  if (opt.taggers > 0 && spec.tagger_accuracies.size() != opt.taggers) {
    throw std::invalid_argument("--taggers does not match the --acc list");
  }

  SynthResult result = generate_synthetic(spec);

  Manifest manifest("synth");
  manifest.set("tokens", static_cast<std::uint64_t>(opt.tokens));
  manifest.set("tagset", static_cast<std::uint64_t>(opt.tags));
  manifest.set("vocabulary", static_cast<std::uint64_t>(opt.vocab));
  manifest.set("accuracies", opt.acc);
  manifest.set("ids", join(result.tagger_ids, ","));
  manifest.set("confusion", opt.confusion);
  manifest.set("seed", opt.seed);

  const std::string gold_path = opt.out_prefix + ".gold.vert";
  save_corpus(result.gold, gold_path);
  manifest.write_for(gold_path);

  const auto gold_flat = gold_of(result.gold).flat();
  ReportRows rows;
  rows.emplace_back("tokens", std::to_string(result.gold.token_count()));
  rows.emplace_back("utterances", std::to_string(result.gold.utterances.size()));
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    const std::string path = opt.out_prefix + "." + result.tagger_ids[i] + ".col";
    save_column(result.columns[i], path);
    manifest.write_for(path);
    rows.emplace_back("accuracy." + result.tagger_ids[i],
                      format_double(accuracy(result.columns[i].flat(), gold_flat), 6));
  }
  if (!result.columns.empty()) {
    const std::string matrix_path = opt.out_prefix + ".matrix";
    save_matrix(align_outputs(result.gold, result.columns, result.tagger_ids),
                matrix_path);
    manifest.write_for(matrix_path);
  }
  std::cout << render_report(rows, "text");
}

// ---------------------------------------------------------------- split ---

struct SplitOpts {
  std::string in;
  std::string matrix;
  std::string out_prefix;
};

void run_split(const SplitOpts& opt) {
  if (opt.in.empty() == opt.matrix.empty()) {
    throw std::invalid_argument("split: give exactly one of --in or --matrix");
  }
  if (!opt.in.empty()) {
    Manifest manifest("split");
    manifest.add_input(opt.in);
    CorpusSplit split = split_corpus(load_corpus(opt.in));
    const std::pair<const char*, const TaggedCorpus*> parts[] = {
        {"train", &split.train}, {"tune", &split.tune}, {"test", &split.test}};
    ReportRows rows;
    for (const auto& [name, corpus] : parts) {
      const std::string path = opt.out_prefix + "." + name + ".vert";
      if (corpus->utterances.empty()) {
        rows.emplace_back(name, "0 utterances (not written)");
        continue;
      }
      save_corpus(*corpus, path);
      manifest.write_for(path);
      rows.emplace_back(name, std::to_string(corpus->utterances.size()) +
                                  " utterances, " +
                                  std::to_string(corpus->token_count()) + " tokens");
    }
    std::cout << render_report(rows, "text");
    return;
  }
  Manifest manifest("split");
  manifest.add_input(opt.matrix);
  MatrixSplit split = split_matrix(load_matrix(opt.matrix));
  const std::pair<const char*, const TaggerMatrix*> parts[] = {
      {"train", &split.train}, {"tune", &split.tune}, {"test", &split.test}};
  ReportRows rows;
  for (const auto& [name, matrix] : parts) {
    const std::string path = opt.out_prefix + "." + name + ".matrix";
    if (matrix->rows.empty()) {
      rows.emplace_back(name, "0 rows (not written)");
      continue;
    }
    save_matrix(*matrix, path);
    manifest.write_for(path);
    rows.emplace_back(name, std::to_string(matrix->rows.size()) + " rows");
  }
  std::cout << render_report(rows, "text");
}

// ------------------------------------------------------------- taggers ---

struct TrainTOpts {
  std::string train;
  std::string model;
  std::string lambda = "0.7,0.2,0.1";
};

void run_train_t(const TrainTOpts& opt) {
  TaggedCorpus corpus = load_corpus(opt.train);
  TaggerT tagger;
  tagger.model = TrigramModel::train(corpus, parse_lambdas(opt.lambda));
  tagger.unknown = build_unknown_base(corpus, tagger.model.lexicon());
  save_tagger_t(tagger, opt.model);

  Manifest manifest("train-t");
  manifest.add_input(opt.train);
  manifest.set("lambda", opt.lambda);
  manifest.write_for(opt.model);

  ReportRows rows;
  rows.emplace_back("tags", std::to_string(tagger.model.tags().size() - 1));
  rows.emplace_back("lexicon", std::to_string(tagger.model.lexicon().vocabulary_size()));
  rows.emplace_back("proposer-cases", std::to_string(tagger.unknown.size()));
  std::cout << render_report(rows, "text");
}

struct TagOpts {
  std::string model;
  std::string input;
  std::string output;
};

void run_tag_t(const TagOpts& opt, const GlobalOpts& global) {
  TaggerT tagger = load_tagger_t(opt.model);
  TokenSeqs input = load_tokens(opt.input);
  TagColumn column =
      tag_corpus_t(tagger.model, proposer_from(tagger.unknown), input, global.exec());
  save_column(column, opt.output);
  Manifest manifest("tag-t");
  manifest.add_input(opt.model);
  manifest.add_input(opt.input);
  manifest.write_for(opt.output);
  std::cout << "tagged " << column.tag_count() << " tokens\n";
}

struct TrainMOpts {
  std::string train;
  std::string model;
};

void run_train_m(const TrainMOpts& opt) {
  TaggerM tagger = train_tagger_m(load_corpus(opt.train));
  save_tagger_m(tagger, opt.model);
  Manifest manifest("train-m");
  manifest.add_input(opt.train);
  manifest.write_for(opt.model);
  ReportRows rows;
  rows.emplace_back("known-cases", std::to_string(tagger.known.size()));
  rows.emplace_back("unknown-cases", std::to_string(tagger.unknown.size()));
  rows.emplace_back("lexicon", std::to_string(tagger.lexicon.vocabulary_size()));
  std::cout << render_report(rows, "text");
}

void run_tag_m(const TagOpts& opt, const GlobalOpts& global) {
  TaggerM tagger = load_tagger_m(opt.model);
  TokenSeqs input = load_tokens(opt.input);
  TagColumn column = tag_corpus_m(tagger, input, global.exec());
  save_column(column, opt.output);
  Manifest manifest("tag-m");
  manifest.add_input(opt.model);
  manifest.add_input(opt.input);
  manifest.write_for(opt.output);
  std::cout << "tagged " << column.tag_count() << " tokens\n";
}

// ---------------------------------------------------------------- align ---

struct AlignOpts {
  std::string benchmark;
  std::string columns;
  std::string ids;
  std::string out;
};

void run_align(const AlignOpts& opt) {
  const auto column_paths = parse_list(opt.columns);
  const auto ids = parse_list(opt.ids);
  TaggedCorpus benchmark = load_corpus(opt.benchmark);
  std::vector<TagColumn> columns;
  columns.reserve(column_paths.size());
  for (const auto& path : column_paths) columns.push_back(load_column(path));
  TaggerMatrix matrix = align_outputs(benchmark, columns, ids);
  save_matrix(matrix, opt.out);
  Manifest manifest("align");
  manifest.add_input(opt.benchmark);
  for (const auto& path : column_paths) manifest.add_input(path);
  manifest.set("ids", opt.ids);
  manifest.write_for(opt.out);
  std::cout << "matrix: " << matrix.rows.size() << " rows x "
            << matrix.n_taggers() << " taggers\n";
}

// -------------------------------------------------------------- combine ---

struct CombineOpts {
  std::string method;
  std::string tune;
  std::string test;
  std::string train_on;
  std::string variant = "tags";
  double prune_cf = 0.25;
  std::int64_t min_pair_count = 1;
  std::uint64_t seed = 1;
  std::string output;
  std::string save_table;
  std::string format = "text";
  std::string report;
};

void run_combine(const CombineOpts& opt, const GlobalOpts& global) {
  CombinerSpec spec;
  spec.method = opt.method;
  spec.variant = stack_variant_from_string(opt.variant);
  spec.prune_confidence = opt.prune_cf;
  spec.min_pair_count = opt.min_pair_count;

  const std::string tune_path = opt.train_on.empty() ? opt.tune : opt.train_on;
  TaggerMatrix tune = load_matrix(tune_path);
  TaggerMatrix test = load_matrix(opt.test);
  if (tune.tagger_ids != test.tagger_ids) {
    throw std::invalid_argument("combine: tune/test tagger ids differ");
  }

  Manifest manifest("combine");
  manifest.add_input(tune_path);
  manifest.add_input(opt.test);
  manifest.set("method", opt.method);
  manifest.set("variant", opt.variant);
  manifest.set("prune-cf", opt.prune_cf);
  manifest.set("min-pair-count", static_cast<std::uint64_t>(opt.min_pair_count));
  manifest.set("seed", opt.seed);

  auto combiner = make_combiner(spec);
  combiner->train(tune);
  std::vector<Tag> combined = combiner->apply(test, opt.seed, global.exec());

  if (!opt.output.empty()) {
    save_column(to_column(test, combined), opt.output);
    manifest.write_for(opt.output);
  }
  if (!opt.save_table.empty()) {
    if (opt.method != "tagpair") {
      throw std::invalid_argument("--save-table only applies to method tagpair");
    }
    std::ostringstream table_out;
    PairTable::from_matrix(tune).write(table_out);
    write_file(opt.save_table, table_out.str());
    manifest.write_for(opt.save_table);
  }

  ReportRows rows;
  rows.emplace_back("method", opt.method);
  if (opt.method == "stack-mbl" || opt.method == "stack-tree") {
    rows.emplace_back("variant", opt.variant);
  }
  rows.emplace_back("taggers", join(test.tagger_ids, ","));
  rows.emplace_back("tune-rows", std::to_string(tune.rows.size()));
  rows.emplace_back("test-rows", std::to_string(test.rows.size()));
  rows.emplace_back("disagreement", format_double(disagreement_fraction(test), 6));
  if (test.has_gold()) {
    rows.emplace_back("accuracy",
                      format_double(accuracy(combined, gold_column(test)), 6));
  }
  deliver_report(render_report(rows, opt.format),
                 opt.report.empty() ? std::nullopt
                                    : std::optional<std::string>(opt.report),
                 manifest);
}

// ----------------------------------------------------------------- eval ---

struct EvalOpts {
  std::string pred;
  std::string gold;
  std::string against;
  std::string train;
  std::string matrix;
  bool no_continuity = false;
  std::size_t top = 15;
  std::string format = "text";
  std::string report;
};

void run_eval(const EvalOpts& opt) {
  if (!opt.matrix.empty()) {
    TaggerMatrix matrix = load_matrix(opt.matrix);
    AgreementBreakdown breakdown = agreement_breakdown(matrix);
    OracleBounds bounds = oracle_bounds(breakdown);
    Manifest manifest("eval");
    manifest.add_input(opt.matrix);
    ReportRows rows;
    rows.emplace_back("tokens", std::to_string(breakdown.tokens));
    rows.emplace_back("all-correct", format_double(breakdown.all_correct, 6));
    rows.emplace_back("majority-correct", format_double(breakdown.majority_correct, 6));
    rows.emplace_back("correct-no-majority",
                      format_double(breakdown.correct_no_majority, 6));
    rows.emplace_back("minority-correct", format_double(breakdown.minority_correct, 6));
    rows.emplace_back("all-wrong", format_double(breakdown.all_wrong, 6));
    rows.emplace_back("any-correct", format_double(bounds.any_correct, 6));
    rows.emplace_back("not-outvoted", format_double(bounds.not_outvoted, 6));
    rows.emplace_back("disagreement", format_double(disagreement_fraction(matrix), 6));
    deliver_report(render_report(rows, opt.format),
                   opt.report.empty() ? std::nullopt
                                      : std::optional<std::string>(opt.report),
                   manifest);
    return;
  }
  if (opt.pred.empty() || opt.gold.empty()) {
    throw std::invalid_argument("eval: need --pred and --gold (or --matrix)");
  }

  TagColumn pred = load_column(opt.pred);
  TaggedCorpus gold = load_corpus(opt.gold);
  if (pred.tag_count() != gold.token_count()) {
    throw AlignError("eval: prediction has " + std::to_string(pred.tag_count()) +
                     " tags, benchmark has " + std::to_string(gold.token_count()));
  }
  std::optional<std::vector<Tag>> against;
  if (!opt.against.empty()) against = load_column(opt.against).flat();
  std::optional<Lexicon> train_lexicon;
  if (!opt.train.empty()) train_lexicon = build_lexicon(load_corpus(opt.train));

  EvalReport report =
      evaluate(pred.flat(), gold, against,
               train_lexicon ? &*train_lexicon : nullptr, !opt.no_continuity);

  Manifest manifest("eval");
  manifest.add_input(opt.pred);
  manifest.add_input(opt.gold);
  if (!opt.against.empty()) manifest.add_input(opt.against);
  if (!opt.train.empty()) manifest.add_input(opt.train);
  manifest.set("continuity", opt.no_continuity ? "off" : "on");

  ReportRows rows;
  rows.emplace_back("tokens", std::to_string(report.tokens));
  rows.emplace_back("correct", std::to_string(report.correct));
  rows.emplace_back("accuracy", format_double(report.accuracy, 6));
  if (report.new_token_rate) {
    rows.emplace_back("new-token-rate", format_double(*report.new_token_rate, 6));
    rows.emplace_back("known-new-tag-rate",
                      format_double(*report.known_token_new_tag_rate, 6));
  }
  if (report.mcnemar) {
    rows.emplace_back("mcnemar-b", std::to_string(report.mcnemar->b));
    rows.emplace_back("mcnemar-c", std::to_string(report.mcnemar->c));
    rows.emplace_back("mcnemar-chi2", format_double(report.mcnemar->chi_square, 4));
    rows.emplace_back("mcnemar-p", fmt_p(report.mcnemar->p));
  }

  // Per-tag precision/recall: the most frequent benchmark tags in text mode,
  // everything in machine mode.
  std::vector<std::pair<Tag, PerTagStats>> tags(report.per_tag.begin(),
                                                report.per_tag.end());
  std::stable_sort(tags.begin(), tags.end(), [](const auto& a, const auto& b) {
    return a.second.gold > b.second.gold;
  });
  const std::size_t limit = opt.format == "machine" ? tags.size() : opt.top;
  for (std::size_t i = 0; i < tags.size() && i < limit; ++i) {
    const auto& [tag, stats] = tags[i];
    char buf[96];
    std::snprintf(buf, sizeof(buf), "p=%.4f r=%.4f gold=%lld",
                  stats.precision(), stats.recall(),
                  static_cast<long long>(stats.gold));
    rows.emplace_back("tag." + tag, buf);
  }
  deliver_report(render_report(rows, opt.format),
                 opt.report.empty() ? std::nullopt
                                    : std::optional<std::string>(opt.report),
                 manifest);
}

// ------------------------------------------------------------- baseline ---

struct BaselineOpts {
  std::string method;
  std::string train;
  std::string input;
  std::string output;
  std::uint64_t seed = 1;
};

void run_baseline(const BaselineOpts& opt) {
  Lexicon lexicon = build_lexicon(load_corpus(opt.train));
  TokenSeqs input = load_tokens(opt.input);
  TagColumn column;
  if (opt.method == "random") {
    column = baseline_random(lexicon, input, opt.seed);
  } else if (opt.method == "lexprob") {
    column = baseline_lexprob(lexicon, input);
  } else {
    throw std::invalid_argument("baseline: method must be random or lexprob");
  }
  save_column(column, opt.output);
  Manifest manifest("baseline");
  manifest.add_input(opt.train);
  manifest.add_input(opt.input);
  manifest.set("method", opt.method);
  manifest.set("seed", opt.seed);
  manifest.write_for(opt.output);
  std::cout << "tagged " << column.tag_count() << " tokens\n";
}

// ---------------------------------------------------------------- sweep ---

struct SweepOpts {
  std::string method = "tagpair";
  std::string matrix;
  std::string tune;
  std::string variant = "tags";
  double prune_cf = 0.25;
  std::int64_t min_pair_count = 1;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string report;
};

void run_sweep(const SweepOpts& opt, const GlobalOpts& global) {
  CombinerSpec spec;
  spec.method = opt.method;
  spec.variant = stack_variant_from_string(opt.variant);
  spec.prune_confidence = opt.prune_cf;
  spec.min_pair_count = opt.min_pair_count;

  TaggerMatrix test = load_matrix(opt.matrix);
  TaggerMatrix tune = load_matrix(opt.tune);
  auto rows = sweep_subsets(test, tune, spec, opt.seed, global.exec());

  Manifest manifest("sweep");
  manifest.add_input(opt.matrix);
  manifest.add_input(opt.tune);
  manifest.set("method", opt.method);
  manifest.set("seed", opt.seed);

  std::ostringstream out;
  if (opt.format == "machine") {
    out << "method\t" << opt.method << '\n';
    out << "taggers\t" << join(test.tagger_ids, ",") << '\n';
    out << "rows\t" << rows.size() << '\n';
    for (const auto& row : rows) {
      out << "acc." << row.label << '\t' << format_double(row.test_accuracy, 6)
          << '\n';
      if (row.component_average) {
        out << "avg." << row.label << '\t'
            << format_double(*row.component_average, 6) << '\n';
        out << "gain." << row.label << '\t' << format_double(*row.gain, 6) << '\n';
        out << "errred." << row.label << '\t'
            << format_double(*row.error_reduction, 1) << '\n';
        out << "best." << row.label << '\t' << *row.best_component << '\n';
      }
    }
  } else {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-12s %-8s %-18s %s\n", "subset", "test",
                  "vs component avg", "err.red. vs best");
    out << buf;
    for (const auto& row : rows) {
      if (row.component_average) {
        std::snprintf(buf, sizeof(buf), "%-12s %-8.4f %.4f%+.4f %18.1f (%s)\n",
                      row.label.c_str(), row.test_accuracy,
                      *row.component_average, *row.gain, *row.error_reduction,
                      row.best_component->c_str());
      } else {
        std::snprintf(buf, sizeof(buf), "%-12s %-8.4f %-18s %s\n",
                      row.label.c_str(), row.test_accuracy, "-", "-");
      }
      out << buf;
    }
  }
  deliver_report(out.str(),
                 opt.report.empty() ? std::nullopt
                                    : std::optional<std::string>(opt.report),
                 manifest);
}

// -------------------------------------------------------- inspect-pairs ---

struct InspectOpts {
  std::string table;
  std::string pair;
  std::string tags;
};

void run_inspect_pairs(const InspectOpts& opt) {
  auto pair_ids = parse_list(opt.pair);
  auto pair_tags = parse_list(opt.tags);
  if (pair_ids.size() != 2 || pair_tags.size() != 2) {
    throw std::invalid_argument("inspect-pairs: --pair and --tags need two entries");
  }
  std::ifstream in(opt.table, std::ios::binary);
  if (!in) throw IoError("cannot open pair table: " + opt.table);
  PairTable table = PairTable::read(in);

  auto index_of = [&table](const std::string& id) {
    for (std::size_t i = 0; i < table.tagger_ids().size(); ++i) {
      if (table.tagger_ids()[i] == id) return i;
    }
    throw std::invalid_argument("inspect-pairs: unknown tagger id: " + id);
  };
  std::size_t i = index_of(pair_ids[0]);
  std::size_t j = index_of(pair_ids[1]);
  Tag t1 = pair_tags[0];
  Tag t2 = pair_tags[1];
  if (i == j) throw std::invalid_argument("inspect-pairs: need two distinct taggers");
  if (i > j) {
    std::swap(i, j);
    std::swap(t1, t2);
  }
  const auto* dist = table.pair_dist(i, j, t1, t2);
  if (dist == nullptr) {
    throw std::invalid_argument("inspect-pairs: tag pair (" + t1 + "," + t2 +
                                ") was not observed for these taggers");
  }
  std::cout << table.tagger_ids()[i] << "=" << t1 << " " << table.tagger_ids()[j]
            << "=" << t2 << " observed " << dist->total << " times\n";
  for (const auto& [tag, p] : dist->probabilities()) {
    std::cout << tag << " " << format_double(p, 4) << '\n';
  }
}

} // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"combitag: train, combine and evaluate wordclass taggers"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts global;
  app.add_flag("--serial", global.serial, "run kernels on the serial reference path");
  app.add_option("--threads", global.threads, "worker thread cap for parallel kernels");

  auto* synth = app.add_subcommand("synth", "generate a synthetic benchmark");
  SynthOpts synth_opts;
  synth->add_option("--tokens", synth_opts.tokens, "approximate token count");
  synth->add_option("--taggers", synth_opts.taggers, "simulated tagger count");
  synth->add_option("--acc", synth_opts.acc,
                    "comma-separated simulated tagger accuracies");
  synth->add_option("--ids", synth_opts.ids, "comma-separated tagger ids");
  synth->add_option("--tags", synth_opts.tags, "tagset size");
  synth->add_option("--vocab", synth_opts.vocab, "vocabulary size");
  synth->add_option("--confusion", synth_opts.confusion,
                    "share of errors drawn from the systematic confusion");
  synth->add_option("--seed", synth_opts.seed, "generator seed");
  synth->add_option("--out-prefix", synth_opts.out_prefix, "output path prefix")
      ->required();
  synth->callback([&] { run_synth(synth_opts); });

  auto* split = app.add_subcommand("split", "8/1/1 train/tune/test split");
  SplitOpts split_opts;
  split->add_option("--in", split_opts.in, "vertical corpus file");
  split->add_option("--matrix", split_opts.matrix, "tagger matrix file");
  split->add_option("--out-prefix", split_opts.out_prefix, "output path prefix")
      ->required();
  split->callback([&] { run_split(split_opts); });

  auto* train_t = app.add_subcommand("train-t", "train the trigram tagger");
  TrainTOpts train_t_opts;
  train_t->add_option("--train", train_t_opts.train, "training corpus")->required();
  train_t->add_option("--model", train_t_opts.model, "model output path")->required();
  train_t->add_option("--lambda", train_t_opts.lambda,
                      "interpolation weights trigram,bigram,unigram");
  train_t->callback([&] { run_train_t(train_t_opts); });

  auto* tag_t = app.add_subcommand("tag-t", "tag text with a trigram model");
  TagOpts tag_t_opts;
  tag_t->add_option("--model", tag_t_opts.model, "model path")->required();
  tag_t->add_option("--input", tag_t_opts.input, "input tokens")->required();
  tag_t->add_option("--output", tag_t_opts.output, "output tag column")->required();
  tag_t->callback([&] { run_tag_t(tag_t_opts, global); });

  auto* train_m = app.add_subcommand("train-m", "train the memory-based tagger");
  TrainMOpts train_m_opts;
  train_m->add_option("--train", train_m_opts.train, "training corpus")->required();
  train_m->add_option("--model", train_m_opts.model, "model output path")->required();
  train_m->callback([&] { run_train_m(train_m_opts); });

  auto* tag_m = app.add_subcommand("tag-m", "tag text with a memory-based model");
  TagOpts tag_m_opts;
  tag_m->add_option("--model", tag_m_opts.model, "model path")->required();
  tag_m->add_option("--input", tag_m_opts.input, "input tokens")->required();
  tag_m->add_option("--output", tag_m_opts.output, "output tag column")->required();
  tag_m->callback([&] { run_tag_m(tag_m_opts, global); });

  auto* align = app.add_subcommand("align", "merge tagger columns into a matrix");
  AlignOpts align_opts;
  align->add_option("--benchmark", align_opts.benchmark, "benchmark corpus")
      ->required();
  align->add_option("--columns", align_opts.columns, "comma-separated column files")
      ->required();
  align->add_option("--ids", align_opts.ids, "comma-separated tagger ids")
      ->required();
  align->add_option("--out", align_opts.out, "matrix output path")->required();
  align->callback([&] { run_align(align_opts); });

  auto* combine = app.add_subcommand("combine", "combine tagger suggestions");
  CombineOpts combine_opts;
  combine
      ->add_option("--method", combine_opts.method,
                   "majority|totprec|tagprec|precrec|tagpair|stack-mbl|stack-tree")
      ->required()
      ->check(CLI::IsMember({"majority", "totprec", "tagprec", "precrec", "tagpair",
                             "stack-mbl", "stack-tree"}));
  combine->add_option("--tune", combine_opts.tune, "tune matrix (combiner training)")
      ->required();
  combine->add_option("--test", combine_opts.test, "matrix to combine")->required();
  combine->add_option("--train-on", combine_opts.train_on,
                      "override the matrix the combiner trains on");
  combine->add_option("--variant", combine_opts.variant,
                      "stacker features: tags|tags-word|tags-context")
      ->check(CLI::IsMember({"tags", "tags-word", "tags-context"}));
  combine->add_option("--prune-cf", combine_opts.prune_cf,
                      "decision tree pruning confidence");
  combine->add_option("--min-pair-count", combine_opts.min_pair_count,
                      "minimum observations before a pair entry is trusted");
  combine->add_option("--seed", combine_opts.seed, "tie-break seed");
  combine->add_option("--output", combine_opts.output, "combined column output");
  combine->add_option("--save-table", combine_opts.save_table,
                      "write the trained pair table (tagpair only)");
  combine->add_option("--format", combine_opts.format, "text|machine")
      ->check(CLI::IsMember({"text", "machine"}));
  combine->add_option("--report", combine_opts.report, "write the report to a file");
  combine->callback([&] { run_combine(combine_opts, global); });

  auto* eval = app.add_subcommand("eval", "score a tag column against a benchmark");
  EvalOpts eval_opts;
  eval->add_option("--pred", eval_opts.pred, "predicted tag column");
  eval->add_option("--gold", eval_opts.gold, "benchmark corpus");
  eval->add_option("--against", eval_opts.against,
                   "second column for a McNemar comparison");
  eval->add_option("--train", eval_opts.train,
                   "training corpus for unseen-token rates");
  eval->add_option("--matrix", eval_opts.matrix,
                   "matrix file: report agreement patterns instead");
  eval->add_flag("--no-continuity", eval_opts.no_continuity,
                 "drop the McNemar continuity correction");
  eval->add_option("--top", eval_opts.top, "per-tag rows in text mode");
  eval->add_option("--format", eval_opts.format, "text|machine")
      ->check(CLI::IsMember({"text", "machine"}));
  eval->add_option("--report", eval_opts.report, "write the report to a file");
  eval->callback([&] { run_eval(eval_opts); });

  auto* baseline = app.add_subcommand("baseline", "random / lexprob baselines");
  BaselineOpts baseline_opts;
  baseline->add_option("--method", baseline_opts.method, "random|lexprob")
      ->required()
      ->check(CLI::IsMember({"random", "lexprob"}));
  baseline->add_option("--train", baseline_opts.train, "training corpus")->required();
  baseline->add_option("--input", baseline_opts.input, "input tokens")->required();
  baseline->add_option("--output", baseline_opts.output, "output tag column")
      ->required();
  baseline->add_option("--seed", baseline_opts.seed, "seed for random draws");
  baseline->callback([&] { run_baseline(baseline_opts); });

  auto* sweep = app.add_subcommand("sweep", "evaluate every tagger subset");
  SweepOpts sweep_opts;
  sweep->add_option("--method", sweep_opts.method, "combination method");
  sweep->add_option("--matrix", sweep_opts.matrix, "test matrix")->required();
  sweep->add_option("--tune", sweep_opts.tune, "tune matrix")->required();
  sweep->add_option("--variant", sweep_opts.variant, "stacker variant")
      ->check(CLI::IsMember({"tags", "tags-word", "tags-context"}));
  sweep->add_option("--prune-cf", sweep_opts.prune_cf, "tree pruning confidence");
  sweep->add_option("--min-pair-count", sweep_opts.min_pair_count,
                    "minimum pair observations");
  sweep->add_option("--seed", sweep_opts.seed, "tie-break seed");
  sweep->add_option("--format", sweep_opts.format, "text|machine")
      ->check(CLI::IsMember({"text", "machine"}));
  sweep->add_option("--report", sweep_opts.report, "write the report to a file");
  sweep->callback([&] { run_sweep(sweep_opts, global); });

  auto* inspect = app.add_subcommand("inspect-pairs",
                                     "print one pair table distribution");
  InspectOpts inspect_opts;
  inspect->add_option("--table", inspect_opts.table, "pair table file")->required();
  inspect->add_option("--pair", inspect_opts.pair, "two tagger ids, e.g. E,T")
      ->required();
  inspect->add_option("--tags", inspect_opts.tags, "their suggested tags, e.g. DT,CS")
      ->required();
  inspect->callback([&] { run_inspect_pairs(inspect_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

} // namespace combitag
