#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>

#include "exeval/classifiers/common.hpp"
#include "exeval/rng.hpp"

namespace exeval {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int leaf_class = -1;
  std::vector<double> class_counts;  // training samples per class (leaves)
};

// CART classification tree: greedy recursive partitioning on Gini impurity.
// Every leaf holds at least min_leaf_size training samples. Split ties break
// on the lowest feature index, then the lowest threshold, so the build is
// fully deterministic. With feature_rng set, each split considers
// features_per_split randomly drawn features (random-forest mode); drawing
// is skipped entirely when features_per_split >= dim.
class DecisionTree {
 public:
  void fit(const DataView& data, int n_classes, int min_leaf_size, int features_per_split = 0,
           Rng* feature_rng = nullptr);

  int predict_class(std::span<const double> x) const;
  const std::vector<double>& leaf_counts(std::span<const double> x) const;
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int n_classes() const { return n_classes_; }

  void write(std::ostream& out) const;
  static DecisionTree read(std::istream& in);

 private:
  int grow(const DataView& data, std::vector<std::size_t>& idx, std::size_t begin,
           std::size_t end, int min_leaf_size, int features_per_split, Rng* feature_rng);

  std::vector<TreeNode> nodes_;
  int n_classes_ = 0;
};

class DtModel : public Classifier {
 public:
  std::string kind() const override { return "dt"; }
  std::size_t dim() const override { return dim_; }
  const std::vector<std::string>& classes() const override { return classes_; }
  std::vector<double> decision_scores(std::span<const double> x) const override;
  void save(std::ostream& out) const override;

  const DecisionTree& tree() const { return tree_; }

  static std::unique_ptr<DtModel> fit(const DtParams& params, const DataView& data,
                                      const std::vector<std::string>& classes);
  static std::unique_ptr<DtModel> load(std::istream& in);

 private:
  std::size_t dim_ = 0;
  DtParams params_;
  std::vector<std::string> classes_;
  DecisionTree tree_;
};

}  // namespace exeval
