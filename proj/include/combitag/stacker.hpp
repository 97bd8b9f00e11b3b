#ifndef COMBITAG_STACKER_HPP
#define COMBITAG_STACKER_HPP

#include "combitag/matrix.hpp"
#include "combitag/mbl.hpp"
#include "combitag/parallel.hpp"
#include "combitag/tree.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace combitag {

// Second-stage feature sets: the component taggers' suggestions, optionally
// plus the focus word, or plus the suggestions for both neighbours.
enum class StackVariant { tags, tags_word, tags_context };

StackVariant stack_variant_from_string(const std::string& s);
std::string to_string(StackVariant variant);

std::vector<std::string> stack_schema(StackVariant variant,
                                      const std::vector<std::string>& tagger_ids);

// One case per token; neighbour positions beyond an utterance edge encode as
// the out-of-bounds symbol. Labels are the gold tags.
std::vector<Case> build_stack_cases(const TaggerMatrix& matrix,
                                    StackVariant variant);

// The same features without a label, for classification.
std::vector<std::string> stack_instance(const TaggerMatrix& matrix,
                                        std::size_t row, StackVariant variant);

// Share of rows whose suggestions are not unanimous.
double disagreement_fraction(const TaggerMatrix& matrix);

// Memory-based second stage; plain overlap except Tags+Context, which uses
// Information-Gain weighting.
CaseBase train_stack_mbl(const TaggerMatrix& tune, StackVariant variant);
std::vector<Tag> apply_stack_mbl(const CaseBase& base, StackVariant variant,
                                 const TaggerMatrix& test,
                                 Exec exec = Exec::parallel);

struct UnsupportedVariantError : std::invalid_argument {
  explicit UnsupportedVariantError(const std::string& msg)
      : std::invalid_argument(msg) {}
};

// Decision-tree second stage. Tags+Word is rejected: the word feature's value
// set is far too large for multiway splits.
DecisionTree train_stack_tree(const TaggerMatrix& tune, StackVariant variant,
                              double prune_confidence = 0.25);
std::vector<Tag> apply_stack_tree(const DecisionTree& tree, StackVariant variant,
                                  const TaggerMatrix& test,
                                  Exec exec = Exec::parallel);

} // namespace combitag

#endif
