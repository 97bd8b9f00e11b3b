// Times every parallel kernel against its serial reference on a synthetic
// workload and checks that both produce identical output.

#include "combitag/combiner.hpp"
#include "combitag/eval.hpp"
#include "combitag/matrix.hpp"
#include "combitag/mbl.hpp"
#include "combitag/pairwise.hpp"
#include "combitag/parallel.hpp"
#include "combitag/stacker.hpp"
#include "combitag/synth.hpp"
#include "combitag/trigram.hpp"
#include "combitag/voting.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

namespace {

using combitag::Exec;

double time_ms(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

struct BenchCase {
  std::string name;
  std::function<std::vector<combitag::Tag>(Exec)> run;
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"combitag-bench: serial reference vs OpenMP kernels"};
  std::size_t tokens = 20000;
  std::uint64_t seed = 1;
  int threads = 0;
  int repeats = 3;
  app.add_option("--tokens", tokens, "benchmark corpus size");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--threads", threads, "OpenMP thread cap");
  app.add_option("--repeats", repeats, "timed repetitions (best is reported)");
  CLI11_PARSE(app, argc, argv);

  if (threads > 0) combitag::set_threads(threads);
  std::printf("tokens=%zu seed=%llu threads=%d\n", tokens,
              static_cast<unsigned long long>(seed), combitag::max_threads());

  combitag::SynthSpec spec;
  spec.tokens = tokens;
  spec.seed = seed;
  spec.tagger_accuracies = {0.90, 0.92, 0.93, 0.94};
  auto synth = combitag::generate_synthetic(spec);
  auto matrix = combitag::align_outputs(synth.gold, synth.columns, synth.tagger_ids);
  auto matrix_split = combitag::split_matrix(matrix);
  auto corpus_split = combitag::split_corpus(synth.gold);
  auto tune_tokens = combitag::tokens_of(corpus_split.tune);

  std::printf("training tagger T and tagger M on %zu tokens...\n",
              corpus_split.train.token_count());
  auto trigram = combitag::TrigramModel::train(corpus_split.train);
  auto tagger_m = combitag::train_tagger_m(corpus_split.train);
  auto proposer = combitag::proposer_from(tagger_m.unknown);

  auto pair_table = combitag::PairTable::from_matrix(matrix_split.tune);
  auto weight_table = combitag::WeightTable::from_matrix(matrix_split.tune);
  auto stack_base =
      combitag::train_stack_mbl(matrix_split.tune, combitag::StackVariant::tags_context);

  std::vector<BenchCase> cases;
  cases.push_back({"viterbi-decode", [&](Exec exec) {
                     return combitag::tag_corpus_t(trigram, proposer, tune_tokens, exec)
                         .flat();
                   }});
  cases.push_back({"mbl-tag", [&](Exec exec) {
                     return combitag::tag_corpus_m(tagger_m, tune_tokens, exec).flat();
                   }});
  cases.push_back({"combine-majority", [&](Exec exec) {
                     return combitag::combine_voting(
                         matrix_split.test, weight_table,
                         combitag::VotingMethod::majority, seed, exec);
                   }});
  cases.push_back({"combine-tagpair", [&](Exec exec) {
                     return combitag::combine_tagpair(matrix_split.test, pair_table,
                                                      seed, 1, exec);
                   }});
  cases.push_back({"stack-mbl-context", [&](Exec exec) {
                     return combitag::apply_stack_mbl(
                         stack_base, combitag::StackVariant::tags_context,
                         matrix_split.test, exec);
                   }});

  std::printf("%-20s %12s %12s %9s %7s\n", "kernel", "serial(ms)", "openmp(ms)",
              "speedup", "equal");
  for (const auto& bench : cases) {
    std::vector<combitag::Tag> serial_out;
    std::vector<combitag::Tag> parallel_out;
    double serial_best = 1e300;
    double parallel_best = 1e300;
    for (int r = 0; r < repeats; ++r) {
      serial_best =
          std::min(serial_best, time_ms([&] { serial_out = bench.run(Exec::serial); }));
      parallel_best = std::min(
          parallel_best, time_ms([&] { parallel_out = bench.run(Exec::parallel); }));
    }
    const bool equal = serial_out == parallel_out;
    std::printf("%-20s %12.1f %12.1f %8.2fx %7s\n", bench.name.c_str(), serial_best,
                parallel_best, serial_best / parallel_best, equal ? "yes" : "NO");
    if (!equal) return 1;
  }
  return 0;
}
