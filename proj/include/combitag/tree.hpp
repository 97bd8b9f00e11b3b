#ifndef COMBITAG_TREE_HPP
#define COMBITAG_TREE_HPP

#include "combitag/corpus.hpp"
#include "combitag/mbl.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace combitag {

// Top-down induction over symbolic features with multiway splits. Split
// choice: maximum gain ratio among features whose gain reaches the mean gain
// of the positive-gain candidates. Pruning is pessimistic: a subtree
// collapses when the upper confidence bound on its error as a single leaf
// does not exceed the summed bounds of its leaves.
class DecisionTree {
public:
  struct Options {
    std::int64_t min_split_support = 2; // nodes below this become leaves
  };

  static DecisionTree induce(const std::vector<Case>& cases, Options options);
  static DecisionTree induce(const std::vector<Case>& cases) {
    return induce(cases, Options{});
  }

  // Returns a pruned copy; confidence in (0,1), smaller prunes harder.
  DecisionTree pruned(double confidence) const;

  Tag classify(std::span<const std::string> instance) const;
  std::size_t node_count() const;
  std::size_t leaf_count() const;
  std::size_t arity() const { return arity_; }

private:
  struct Node {
    bool leaf = true;
    std::size_t feature = 0;               // internal nodes
    std::map<std::string, std::int32_t> children;
    std::int32_t default_child = -1;       // modal branch for unseen values
    Tag label;                             // leaves (and pruning estimate)
    std::map<Tag, std::int64_t> class_counts;
    std::int64_t n = 0;
    std::int64_t errors = 0;               // n minus modal count
  };

  std::int32_t build(const std::vector<Case>& cases,
                     std::vector<std::int32_t>& case_ids,
                     std::vector<bool>& used_features, Options options);
  double subtree_error_bound(std::int32_t node, double confidence) const;
  void prune_node(std::int32_t node, double confidence);
  std::size_t count_reachable(std::int32_t node, bool leaves_only) const;

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::size_t arity_ = 0;
  std::map<Tag, std::int64_t> root_counts_; // label tie-breaks
};

// Binomial upper confidence bound on the error rate of a leaf with n cases
// and e errors, at one-sided confidence cf.
double pessimistic_error_bound(std::int64_t errors, std::int64_t n, double cf);

} // namespace combitag

#endif
