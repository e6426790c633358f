#include "exeval/classifiers/tree.hpp"
#include <istream>
#include <ostream>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "exeval/classifiers/serialize.hpp"
#include "exeval/error.hpp"

namespace exeval {

namespace {

double gini(const std::vector<double>& counts, double total) {
  if (total <= 0.0) return 0.0;
  double g = 1.0;
  for (double c : counts) {
    const double p = c / total;
    g -= p * p;
  }
  return g;
}

int majority_class(const std::vector<double>& counts) {
  int best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c)
    if (counts[c] > counts[best]) best = static_cast<int>(c);
  return best;
}

}  // namespace

void DecisionTree::fit(const DataView& data, int n_classes, int min_leaf_size,
                       int features_per_split, Rng* feature_rng) {
  nodes_.clear();
  n_classes_ = n_classes;
  std::vector<std::size_t> idx(data.n);
  std::iota(idx.begin(), idx.end(), 0);
  grow(data, idx, 0, data.n, min_leaf_size, features_per_split, feature_rng);
}

int DecisionTree::grow(const DataView& data, std::vector<std::size_t>& idx, std::size_t begin,
                       std::size_t end, int min_leaf_size, int features_per_split,
                       Rng* feature_rng) {
  const std::size_t n = end - begin;
  std::vector<double> counts(n_classes_, 0.0);
  for (std::size_t i = begin; i < end; ++i) counts[data.y[idx[i]]] += 1.0;
  const double node_gini = gini(counts, static_cast<double>(n));

  const int node_id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();

  const auto make_leaf = [&] {
    TreeNode& leaf = nodes_[node_id];
    leaf.feature = -1;
    leaf.leaf_class = majority_class(counts);
    leaf.class_counts = counts;
    return node_id;
  };

  if (node_gini == 0.0 || n < 2 * static_cast<std::size_t>(min_leaf_size) || n < 2)
    return make_leaf();

  // Candidate features, in ascending id order for deterministic ties.
  std::vector<int> candidates;
  const int dim = static_cast<int>(data.dim);
  if (feature_rng != nullptr && features_per_split > 0 && features_per_split < dim) {
    const auto sampled = feature_rng->sample_without_replacement(
        static_cast<std::size_t>(dim), static_cast<std::size_t>(features_per_split));
    candidates.assign(sampled.begin(), sampled.end());
    std::sort(candidates.begin(), candidates.end());
  } else {
    candidates.resize(dim);
    std::iota(candidates.begin(), candidates.end(), 0);
  }

  struct Best {
    double impurity = std::numeric_limits<double>::infinity();
    int feature = -1;
    double threshold = 0.0;
  } best;

  std::vector<std::pair<double, int>> values(n);  // (feature value, class)
  std::vector<double> left_counts(n_classes_);
  for (int f : candidates) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t s = idx[begin + i];
      values[i] = {data.x[s * data.dim + f], data.y[s]};
    }
    std::sort(values.begin(), values.end());
    if (values.front().first == values.back().first) continue;  // constant feature
    std::fill(left_counts.begin(), left_counts.end(), 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_counts[values[i].second] += 1.0;
      if (values[i].first == values[i + 1].first) continue;
      const std::size_t n_left = i + 1;
      const std::size_t n_right = n - n_left;
      if (n_left < static_cast<std::size_t>(min_leaf_size) ||
          n_right < static_cast<std::size_t>(min_leaf_size))
        continue;
      double g_left = 1.0, g_right = 1.0;
      for (int c = 0; c < n_classes_; ++c) {
        const double pl = left_counts[c] / static_cast<double>(n_left);
        const double pr = (counts[c] - left_counts[c]) / static_cast<double>(n_right);
        g_left -= pl * pl;
        g_right -= pr * pr;
      }
      const double impurity = (static_cast<double>(n_left) * g_left +
                               static_cast<double>(n_right) * g_right) /
                              static_cast<double>(n);
      if (impurity < best.impurity - 1e-12) {
        best.impurity = impurity;
        best.feature = f;
        best.threshold = 0.5 * (values[i].first + values[i + 1].first);
      }
    }
  }

  if (best.feature < 0 || best.impurity >= node_gini - 1e-12) return make_leaf();

  // Stable partition keeps the index order deterministic.
  std::vector<std::size_t> left, right;
  for (std::size_t i = begin; i < end; ++i) {
    if (data.x[idx[i] * data.dim + best.feature] <= best.threshold)
      left.push_back(idx[i]);
    else
      right.push_back(idx[i]);
  }
  std::copy(left.begin(), left.end(), idx.begin() + begin);
  std::copy(right.begin(), right.end(), idx.begin() + begin + left.size());

  nodes_[node_id].feature = best.feature;
  nodes_[node_id].threshold = best.threshold;
  const int l = grow(data, idx, begin, begin + left.size(), min_leaf_size, features_per_split,
                     feature_rng);
  const int r = grow(data, idx, begin + left.size(), end, min_leaf_size, features_per_split,
                     feature_rng);
  nodes_[node_id].left = l;
  nodes_[node_id].right = r;
  return node_id;
}

int DecisionTree::predict_class(std::span<const double> x) const {
  return majority_class(leaf_counts(x));
}

const std::vector<double>& DecisionTree::leaf_counts(std::span<const double> x) const {
  int node = 0;
  while (nodes_[node].feature >= 0)
    node = x[nodes_[node].feature] <= nodes_[node].threshold ? nodes_[node].left
                                                             : nodes_[node].right;
  return nodes_[node].class_counts;
}

void DecisionTree::write(std::ostream& out) const {
  out << "tree " << nodes_.size() << ' ' << n_classes_ << "\n";
  for (const auto& node : nodes_) {
    out << node.feature << ' ' << node.left << ' ' << node.right << ' ' << node.leaf_class << ' '
        << detail::format_double(node.threshold);
    if (node.feature < 0)
      for (double c : node.class_counts) out << ' ' << detail::format_double(c);
    out << "\n";
  }
}

DecisionTree DecisionTree::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("tree ", 0) != 0)
    throw Error(Errc::Parse, "expected tree header");
  char* end = nullptr;
  const std::size_t n_nodes = std::strtoull(line.c_str() + 5, &end, 10);
  DecisionTree tree;
  tree.n_classes_ = static_cast<int>(std::strtol(end, &end, 10));
  tree.nodes_.resize(n_nodes);
  for (auto& node : tree.nodes_) {
    if (!std::getline(in, line)) throw Error(Errc::Parse, "tree truncated");
    const char* p = line.c_str();
    node.feature = static_cast<int>(std::strtol(p, &end, 10));
    node.left = static_cast<int>(std::strtol(end, &end, 10));
    node.right = static_cast<int>(std::strtol(end, &end, 10));
    node.leaf_class = static_cast<int>(std::strtol(end, &end, 10));
    node.threshold = std::strtod(end, &end);
    if (node.feature < 0) {
      node.class_counts.resize(tree.n_classes_);
      for (auto& c : node.class_counts) c = std::strtod(end, &end);
    }
  }
  return tree;
}

std::vector<double> DtModel::decision_scores(std::span<const double> x) const {
  if (x.size() != dim_) throw Error(Errc::DimensionMismatch, "dt predict dimension");
  return tree_.leaf_counts(x);
}

std::unique_ptr<DtModel> DtModel::fit(const DtParams& params, const DataView& data,
                                      const std::vector<std::string>& classes) {
  auto model = std::make_unique<DtModel>();
  model->dim_ = data.dim;
  model->params_ = params;
  model->classes_ = classes;
  model->tree_.fit(data, static_cast<int>(classes.size()), params.min_leaf_size);
  return model;
}

void DtModel::save(std::ostream& out) const {
  detail::ModelWriter w(out);
  w.line("kind", std::string("dt"));
  w.line("dim", dim_);
  w.classes(classes_);
  w.line("min_leaf_size", params_.min_leaf_size);
  tree_.write(out);
}

std::unique_ptr<DtModel> DtModel::load(std::istream& in) {
  detail::ModelReader r(in);
  auto model = std::make_unique<DtModel>();
  if (r.str("kind") != "dt") throw Error(Errc::Parse, "not a dt model");
  model->dim_ = r.size("dim");
  model->classes_ = r.classes();
  model->params_.min_leaf_size = static_cast<int>(r.integer("min_leaf_size"));
  model->tree_ = DecisionTree::read(in);
  return model;
}

}  // namespace exeval
