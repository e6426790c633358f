#pragma once

#include <cstdint>
#include <memory>

#include "exeval/classifiers/common.hpp"

namespace exeval {

// Flat parameter layout of the one-hidden-layer softmax network:
// W1 (n_hidden x n_in), b1, W2 (n_out x n_hidden), b2.
struct MlpLayout {
  std::size_t n_in = 0;
  std::size_t n_hidden = 0;
  std::size_t n_out = 0;

  std::size_t w1() const { return 0; }
  std::size_t b1() const { return n_hidden * n_in; }
  std::size_t w2() const { return b1() + n_hidden; }
  std::size_t b2() const { return w2() + n_out * n_hidden; }
  std::size_t size() const { return b2() + n_out; }
};

// Mean softmax cross-entropy over the batch and its analytic gradient
// (central-difference checked in the tests). tanh hidden activations.
double mlp_loss_and_grad(const MlpLayout& layout, std::span<const double> params,
                         const DataView& data, std::span<double> grad);

// Hidden size under the configured rule.
int mlp_hidden_size(const MlpParams& params, std::size_t n_in, std::size_t n_out);

// Backpropagation with full-batch gradient descent plus momentum and early
// stopping on a held-out slice of the training data.
class MlpModel : public Classifier {
 public:
  std::string kind() const override { return "mlp"; }
  std::size_t dim() const override { return layout_.n_in; }
  const std::vector<std::string>& classes() const override { return classes_; }
  std::vector<double> decision_scores(std::span<const double> x) const override;
  void save(std::ostream& out) const override;

  const MlpLayout& layout() const { return layout_; }

  static std::unique_ptr<MlpModel> fit(const MlpParams& params, const DataView& data,
                                       const std::vector<std::string>& classes,
                                       std::uint64_t seed);
  static std::unique_ptr<MlpModel> load(std::istream& in);

 private:
  MlpLayout layout_;
  std::vector<std::string> classes_;
  std::vector<double> params_;
};

}  // namespace exeval
