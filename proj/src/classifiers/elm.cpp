#include "exeval/classifiers/elm.hpp"
#include <istream>
#include <ostream>

#include <cmath>

#include "exeval/classifiers/serialize.hpp"
#include "exeval/error.hpp"
#include "exeval/rng.hpp"

namespace exeval {

namespace {
inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
}

Matrix solve_elm_output_weights(const Matrix& hidden, const Matrix& targets, double ridge) {
  if (hidden.rows != targets.rows)
    throw Error(Errc::DimensionMismatch, "hidden/target row mismatch");
  const Matrix gram = gram_ridge(hidden, ridge);
  const Matrix rhs = matmul(transpose(hidden), targets);
  return cholesky_solve(gram, rhs);
}

Matrix ElmModel::hidden_activations(const DataView& data) const {
  const std::size_t h = input_weights_.rows;
  Matrix out(data.n, h);
  for (std::size_t i = 0; i < data.n; ++i) {
    const double* x = data.x + i * dim_;
    for (std::size_t j = 0; j < h; ++j) {
      const double* w = input_weights_.row(j);
      double z = hidden_bias_[j];
      for (std::size_t d = 0; d < dim_; ++d) z += w[d] * x[d];
      out.at(i, j) = sigmoid(z);
    }
  }
  return out;
}

std::vector<double> ElmModel::decision_scores(std::span<const double> x) const {
  if (x.size() != dim_) throw Error(Errc::DimensionMismatch, "elm predict dimension");
  const std::size_t h = input_weights_.rows;
  std::vector<double> hidden(h);
  for (std::size_t j = 0; j < h; ++j) {
    const double* w = input_weights_.row(j);
    double z = hidden_bias_[j];
    for (std::size_t d = 0; d < dim_; ++d) z += w[d] * x[d];
    hidden[j] = sigmoid(z);
  }
  std::vector<double> scores(classes_.size(), 0.0);
  for (std::size_t j = 0; j < h; ++j)
    for (std::size_t c = 0; c < scores.size(); ++c) scores[c] += hidden[j] * beta_.at(j, c);
  return scores;
}

std::unique_ptr<ElmModel> ElmModel::fit(const ElmParams& params, const DataView& data,
                                        const std::vector<std::string>& classes,
                                        std::uint64_t seed) {
  if (params.n_hidden < 10 || params.n_hidden > 1000)
    throw Error(Errc::InvalidConfig, "elm n_hidden must lie in 10..1000");
  auto model = std::make_unique<ElmModel>();
  model->dim_ = data.dim;
  model->ridge_ = params.ridge;
  model->classes_ = classes;

  Rng rng(derive_seed(seed, 0xe1a0));
  const std::size_t h = static_cast<std::size_t>(params.n_hidden);
  model->input_weights_ = Matrix(h, data.dim);
  for (double& w : model->input_weights_.data) w = rng.uniform(-1.0, 1.0);
  model->hidden_bias_.resize(h);
  for (double& b : model->hidden_bias_) b = rng.uniform(-1.0, 1.0);

  const Matrix hidden = model->hidden_activations(data);
  Matrix targets(data.n, classes.size());
  for (std::size_t i = 0; i < data.n; ++i) targets.at(i, data.y[i]) = 1.0;
  model->beta_ = solve_elm_output_weights(hidden, targets, params.ridge);
  return model;
}

void ElmModel::save(std::ostream& out) const {
  detail::ModelWriter w(out);
  w.line("kind", std::string("elm"));
  w.line("dim", dim_);
  w.classes(classes_);
  w.line("n_hidden", input_weights_.rows);
  w.doubles("ridge", {ridge_});
  w.matrix("input_weights", input_weights_);
  w.doubles("hidden_bias", hidden_bias_);
  w.matrix("beta", beta_);
}

std::unique_ptr<ElmModel> ElmModel::load(std::istream& in) {
  detail::ModelReader r(in);
  auto model = std::make_unique<ElmModel>();
  if (r.str("kind") != "elm") throw Error(Errc::Parse, "not an elm model");
  model->dim_ = r.size("dim");
  model->classes_ = r.classes();
  const std::size_t h = r.size("n_hidden");
  model->ridge_ = r.doubles("ridge", 1)[0];
  model->input_weights_ = r.matrix("input_weights", h, model->dim_);
  model->hidden_bias_ = r.doubles("hidden_bias", h);
  model->beta_ = r.matrix("beta", h, model->classes_.size());
  return model;
}

}  // namespace exeval
