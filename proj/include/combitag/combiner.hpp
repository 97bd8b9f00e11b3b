#ifndef COMBITAG_COMBINER_HPP
#define COMBITAG_COMBINER_HPP

#include "combitag/matrix.hpp"
#include "combitag/parallel.hpp"
#include "combitag/stacker.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace combitag {

struct CombinerSpec {
  std::string method; // majority|totprec|tagprec|precrec|tagpair|stack-mbl|stack-tree
  StackVariant variant = StackVariant::tags;
  double prune_confidence = 0.25;
  std::int64_t min_pair_count = 1;
};

class Combiner {
public:
  virtual ~Combiner() = default;
  virtual void train(const TaggerMatrix& tune) = 0;
  virtual std::vector<Tag> apply(const TaggerMatrix& test, std::uint64_t seed,
                                 Exec exec) const = 0;
};

bool combiner_needs_training_data(const std::string& method); // all but majority
std::unique_ptr<Combiner> make_combiner(const CombinerSpec& spec);

struct SweepRow {
  std::vector<std::size_t> subset; // indices into the matrix tagger order
  std::string label;
  double test_accuracy = 0.0;
  // Subsets of size >= 2 only:
  std::optional<double> component_average;
  std::optional<double> gain;            // accuracy - component average
  std::optional<double> error_reduction; // percent vs the best component
  std::optional<std::string> best_component;
};

// Singleton rows report raw column accuracy; every subset of size >= 2 gets
// the combiner trained on its tune projection. Rows are sorted by accuracy.
std::vector<SweepRow> sweep_subsets(const TaggerMatrix& test,
                                    const TaggerMatrix& tune,
                                    const CombinerSpec& spec, std::uint64_t seed,
                                    Exec exec = Exec::parallel);

} // namespace combitag

#endif
