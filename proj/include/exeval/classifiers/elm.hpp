#pragma once

#include <cstdint>
#include <memory>

#include "exeval/classifiers/common.hpp"
#include "exeval/matrix.hpp"

namespace exeval {

// Output weights of the regularized least-squares layer:
// (H^T H + ridge*I) beta = H^T T. Exposed for the normal-equation checks.
Matrix solve_elm_output_weights(const Matrix& hidden, const Matrix& targets, double ridge);

// Extreme learning machine: one hidden sigmoid layer with fixed random
// weights drawn uniform [-1, 1] from the seed, output weights by regularized
// least squares against one-hot targets.
class ElmModel : public Classifier {
 public:
  std::string kind() const override { return "elm"; }
  std::size_t dim() const override { return dim_; }
  const std::vector<std::string>& classes() const override { return classes_; }
  std::vector<double> decision_scores(std::span<const double> x) const override;
  void save(std::ostream& out) const override;

  // Hidden activations for a batch (one row per sample).
  Matrix hidden_activations(const DataView& data) const;
  const Matrix& output_weights() const { return beta_; }
  double ridge() const { return ridge_; }

  static std::unique_ptr<ElmModel> fit(const ElmParams& params, const DataView& data,
                                       const std::vector<std::string>& classes,
                                       std::uint64_t seed);
  static std::unique_ptr<ElmModel> load(std::istream& in);

 private:
  std::size_t dim_ = 0;
  double ridge_ = 1e-6;
  std::vector<std::string> classes_;
  Matrix input_weights_;  // n_hidden x dim
  std::vector<double> hidden_bias_;
  Matrix beta_;  // n_hidden x n_classes
};

}  // namespace exeval
