#pragma once

#include <memory>

#include "exeval/classifiers/common.hpp"

namespace exeval {

// Brute-force Euclidean k-nearest-neighbors over the stored (standardized)
// training set. Neighbors are ranked by (squared distance, training index),
// so prediction is exact and deterministic; the k votes pick the majority
// class, ties falling to the lowest class index.
class KnnModel : public Classifier {
 public:
  std::string kind() const override { return "knn"; }
  std::size_t dim() const override { return dim_; }
  const std::vector<std::string>& classes() const override { return classes_; }
  std::vector<double> decision_scores(std::span<const double> x) const override;
  void save(std::ostream& out) const override;

  int k() const { return k_; }

  // Batch prediction parallelized over queries, plus the serial twin.
  std::vector<std::size_t> predict_batch(const DataView& queries) const;
  std::vector<std::size_t> predict_batch_serial(const DataView& queries) const;

  static std::unique_ptr<KnnModel> fit(const KnnParams& params, const DataView& data,
                                       const std::vector<std::string>& classes);
  static std::unique_ptr<KnnModel> load(std::istream& in);

 private:
  std::size_t dim_ = 0;
  int k_ = 1;
  std::vector<std::string> classes_;
  std::vector<double> train_x_;
  std::vector<int> train_y_;
};

}  // namespace exeval
