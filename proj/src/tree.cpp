#include "combitag/tree.hpp"

#include "combitag/util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace combitag {

namespace {

double entropy_of(const std::map<Tag, std::int64_t>& counts, std::int64_t n) {
  double h = 0.0;
  for (const auto& [label, count] : counts) {
    if (count == 0) continue;
    double p = static_cast<double>(count) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h;
}

Tag modal_label(const std::map<Tag, std::int64_t>& counts,
                const std::map<Tag, std::int64_t>& global) {
  Tag best;
  std::int64_t best_count = -1;
  std::int64_t best_global = -1;
  for (const auto& [label, count] : counts) {
    auto git = global.find(label);
    std::int64_t g = git == global.end() ? 0 : git->second;
    if (count > best_count || (count == best_count && g > best_global)) {
      best = label;
      best_count = count;
      best_global = g;
    }
  }
  return best;
}

} // namespace

double pessimistic_error_bound(std::int64_t errors, std::int64_t n, double cf) {
  if (n <= 0) return 0.0;
  const double z = inv_normal_cdf(1.0 - cf);
  const double nn = static_cast<double>(n);
  const double f = static_cast<double>(errors) / nn;
  const double z2 = z * z;
  const double upper =
      (f + z2 / (2.0 * nn) +
       z * std::sqrt(f / nn - f * f / nn + z2 / (4.0 * nn * nn))) /
      (1.0 + z2 / nn);
  return upper;
}

DecisionTree DecisionTree::induce(const std::vector<Case>& cases, Options options) {
  if (cases.empty()) throw std::invalid_argument("DecisionTree: no cases");
  DecisionTree tree;
  tree.arity_ = cases[0].features.size();
  for (const auto& c : cases) {
    if (c.features.size() != tree.arity_) {
      throw std::invalid_argument("DecisionTree: ragged case arity");
    }
    ++tree.root_counts_[c.label];
  }
  std::vector<std::int32_t> all_ids(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    all_ids[i] = static_cast<std::int32_t>(i);
  }
  std::vector<bool> used(tree.arity_, false);
  tree.root_ = tree.build(cases, all_ids, used, options);
  return tree;
}

std::int32_t DecisionTree::build(const std::vector<Case>& cases,
                                 std::vector<std::int32_t>& case_ids,
                                 std::vector<bool>& used_features,
                                 Options options) {
  Node node;
  node.n = static_cast<std::int64_t>(case_ids.size());
  for (std::int32_t id : case_ids) ++node.class_counts[cases[id].label];
  node.label = modal_label(node.class_counts, root_counts_);
  node.errors = node.n - node.class_counts.at(node.label);

  auto make_leaf = [&]() {
    node.leaf = true;
    nodes_.push_back(std::move(node));
    return static_cast<std::int32_t>(nodes_.size() - 1);
  };

  if (node.errors == 0 || node.n < options.min_split_support) return make_leaf();

  // Candidate features: unused on this path, >= 2 observed values, gain > 0.
  const double base_h = entropy_of(node.class_counts, node.n);
  struct Split {
    std::size_t feature;
    double gain;
    double gain_ratio;
    std::map<std::string, std::vector<std::int32_t>> partition;
  };
  std::vector<Split> candidates;
  for (std::size_t f = 0; f < arity_; ++f) {
    if (used_features[f]) continue;
    std::map<std::string, std::vector<std::int32_t>> partition;
    for (std::int32_t id : case_ids) partition[cases[id].features[f]].push_back(id);
    if (partition.size() < 2) continue;
    double conditional = 0.0;
    double split_info = 0.0;
    for (const auto& [value, ids] : partition) {
      std::map<Tag, std::int64_t> counts;
      for (std::int32_t id : ids) ++counts[cases[id].label];
      const double frac =
          static_cast<double>(ids.size()) / static_cast<double>(node.n);
      conditional += frac * entropy_of(counts, static_cast<std::int64_t>(ids.size()));
      split_info -= frac * std::log2(frac);
    }
    const double gain = base_h - conditional;
    if (gain <= 1e-12 || split_info <= 0.0) continue;
    candidates.push_back({f, gain, gain / split_info, std::move(partition)});
  }
  if (candidates.empty()) return make_leaf();

  double mean_gain = 0.0;
  for (const auto& c : candidates) mean_gain += c.gain;
  mean_gain /= static_cast<double>(candidates.size());

  const Split* best = nullptr;
  for (const auto& c : candidates) {
    if (c.gain + 1e-12 < mean_gain) continue; // below-mean gains are excluded
    if (best == nullptr || c.gain_ratio > best->gain_ratio) best = &c;
  }
  if (best == nullptr) return make_leaf();

  node.leaf = false;
  node.feature = best->feature;
  // Reserve our slot before recursing so child indices stay valid.
  nodes_.push_back(std::move(node));
  const std::int32_t self = static_cast<std::int32_t>(nodes_.size() - 1);

  used_features[best->feature] = true;
  std::map<std::string, std::int32_t> children;
  std::int32_t default_child = -1;
  std::int64_t default_size = -1;
  // The partition borrows best->candidates storage; copy the branches out
  // first because nodes_ may reallocate during recursion.
  std::map<std::string, std::vector<std::int32_t>> partition = best->partition;
  for (auto& [value, ids] : partition) {
    std::int32_t child = build(cases, ids, used_features, options);
    children[value] = child;
    if (static_cast<std::int64_t>(ids.size()) > default_size) {
      default_size = static_cast<std::int64_t>(ids.size());
      default_child = child;
    }
  }
  used_features[best->feature] = false;

  nodes_[self].children = std::move(children);
  nodes_[self].default_child = default_child;
  return self;
}

Tag DecisionTree::classify(std::span<const std::string> instance) const {
  if (instance.size() != arity_) {
    throw std::invalid_argument("DecisionTree: instance arity mismatch");
  }
  std::int32_t at = root_;
  while (!nodes_[at].leaf) {
    const Node& node = nodes_[at];
    auto it = node.children.find(instance[node.feature]);
    at = it == node.children.end() ? node.default_child : it->second;
  }
  return nodes_[at].label;
}

double DecisionTree::subtree_error_bound(std::int32_t node, double cf) const {
  const Node& nd = nodes_[node];
  if (nd.leaf) {
    return static_cast<double>(nd.n) * pessimistic_error_bound(nd.errors, nd.n, cf);
  }
  double sum = 0.0;
  for (const auto& [value, child] : nd.children) {
    sum += subtree_error_bound(child, cf);
  }
  return sum;
}

void DecisionTree::prune_node(std::int32_t node, double cf) {
  Node& nd = nodes_[node];
  if (nd.leaf) return;
  for (const auto& [value, child] : nd.children) prune_node(child, cf);
  const double as_leaf =
      static_cast<double>(nd.n) * pessimistic_error_bound(nd.errors, nd.n, cf);
  const double as_subtree = subtree_error_bound(node, cf);
  if (as_leaf <= as_subtree) {
    nd.leaf = true;
    nd.children.clear();
    nd.default_child = -1;
  }
}

DecisionTree DecisionTree::pruned(double confidence) const {
  if (confidence <= 0.0 || confidence >= 1.0) {
    throw std::invalid_argument("DecisionTree: pruning confidence must be in (0,1)");
  }
  DecisionTree copy = *this;
  copy.prune_node(copy.root_, confidence);
  return copy;
}

std::size_t DecisionTree::count_reachable(std::int32_t node, bool leaves_only) const {
  const Node& nd = nodes_[node];
  if (nd.leaf) return 1;
  std::size_t sum = leaves_only ? 0 : 1;
  for (const auto& [value, child] : nd.children) {
    sum += count_reachable(child, leaves_only);
  }
  return sum;
}

std::size_t DecisionTree::node_count() const {
  return root_ < 0 ? 0 : count_reachable(root_, false);
}

std::size_t DecisionTree::leaf_count() const {
  return root_ < 0 ? 0 : count_reachable(root_, true);
}

} // namespace combitag
