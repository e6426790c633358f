#include "exeval/classifiers/mlp.hpp"
#include <istream>
#include <ostream>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "exeval/classifiers/serialize.hpp"
#include "exeval/error.hpp"
#include "exeval/rng.hpp"

namespace exeval {

namespace {

// Forward pass for one sample; returns the softmax probabilities.
void forward(const MlpLayout& lay, std::span<const double> p, const double* x,
             std::vector<double>& hidden, std::vector<double>& probs) {
  hidden.resize(lay.n_hidden);
  for (std::size_t j = 0; j < lay.n_hidden; ++j) {
    const double* w = p.data() + lay.w1() + j * lay.n_in;
    double z = p[lay.b1() + j];
    for (std::size_t d = 0; d < lay.n_in; ++d) z += w[d] * x[d];
    hidden[j] = std::tanh(z);
  }
  probs.resize(lay.n_out);
  double zmax = -1e300;
  for (std::size_t c = 0; c < lay.n_out; ++c) {
    const double* w = p.data() + lay.w2() + c * lay.n_hidden;
    double z = p[lay.b2() + c];
    for (std::size_t j = 0; j < lay.n_hidden; ++j) z += w[j] * hidden[j];
    probs[c] = z;
    zmax = std::max(zmax, z);
  }
  double sum = 0.0;
  for (double& z : probs) {
    z = std::exp(z - zmax);
    sum += z;
  }
  for (double& z : probs) z /= sum;
}

}  // namespace

double mlp_loss_and_grad(const MlpLayout& lay, std::span<const double> params,
                         const DataView& data, std::span<double> grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  std::vector<double> hidden, probs, dz1(lay.n_hidden);
  double loss = 0.0;
  const double inv_n = 1.0 / static_cast<double>(data.n);
  for (std::size_t i = 0; i < data.n; ++i) {
    const double* x = data.x + i * lay.n_in;
    forward(lay, params, x, hidden, probs);
    const int y = data.y[i];
    loss -= std::log(std::max(probs[y], 1e-300));
    // dz2 = (p - onehot) / n
    std::fill(dz1.begin(), dz1.end(), 0.0);
    for (std::size_t c = 0; c < lay.n_out; ++c) {
      const double dz2 = (probs[c] - (static_cast<int>(c) == y ? 1.0 : 0.0)) * inv_n;
      grad[lay.b2() + c] += dz2;
      double* gw2 = grad.data() + lay.w2() + c * lay.n_hidden;
      const double* w2 = params.data() + lay.w2() + c * lay.n_hidden;
      for (std::size_t j = 0; j < lay.n_hidden; ++j) {
        gw2[j] += dz2 * hidden[j];
        dz1[j] += dz2 * w2[j];
      }
    }
    for (std::size_t j = 0; j < lay.n_hidden; ++j) {
      const double d = dz1[j] * (1.0 - hidden[j] * hidden[j]);
      grad[lay.b1() + j] += d;
      double* gw1 = grad.data() + lay.w1() + j * lay.n_in;
      for (std::size_t dd = 0; dd < lay.n_in; ++dd) gw1[dd] += d * x[dd];
    }
  }
  return loss * inv_n;
}

int mlp_hidden_size(const MlpParams& params, std::size_t n_in, std::size_t n_out) {
  if (params.n_hidden > 0) return params.n_hidden;
  if (params.hidden_rule == MlpHiddenRule::HalfInputs)
    return std::max(1, static_cast<int>(std::lround(static_cast<double>(n_in) / 2.0)));
  return std::max(1, static_cast<int>(std::lround(
                         (static_cast<double>(n_in) + static_cast<double>(n_out)) / 2.0)));
}

std::vector<double> MlpModel::decision_scores(std::span<const double> x) const {
  if (x.size() != layout_.n_in) throw Error(Errc::DimensionMismatch, "mlp predict dimension");
  std::vector<double> hidden, probs;
  forward(layout_, params_, x.data(), hidden, probs);
  return probs;
}

std::unique_ptr<MlpModel> MlpModel::fit(const MlpParams& params, const DataView& data,
                                        const std::vector<std::string>& classes,
                                        std::uint64_t seed) {
  auto model = std::make_unique<MlpModel>();
  model->classes_ = classes;
  model->layout_ = MlpLayout{data.dim,
                             static_cast<std::size_t>(mlp_hidden_size(params, data.dim,
                                                                      classes.size())),
                             classes.size()};
  const MlpLayout& lay = model->layout_;

  Rng rng(derive_seed(seed, 0x317a));
  model->params_.resize(lay.size());
  const double r1 = std::sqrt(6.0 / static_cast<double>(lay.n_in + lay.n_hidden));
  const double r2 = std::sqrt(6.0 / static_cast<double>(lay.n_hidden + lay.n_out));
  for (std::size_t i = lay.w1(); i < lay.b1(); ++i) model->params_[i] = rng.uniform(-r1, r1);
  for (std::size_t i = lay.b1(); i < lay.w2(); ++i) model->params_[i] = 0.0;
  for (std::size_t i = lay.w2(); i < lay.b2(); ++i) model->params_[i] = rng.uniform(-r2, r2);
  for (std::size_t i = lay.b2(); i < lay.size(); ++i) model->params_[i] = 0.0;

  // Early-stopping holdout slice (seeded shuffle of the training rows).
  std::vector<std::size_t> order(data.n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::size_t n_hold = 0;
  if (data.n >= 20 && params.holdout_fraction > 0.0)
    n_hold = std::max<std::size_t>(1, static_cast<std::size_t>(
                                          std::floor(params.holdout_fraction *
                                                     static_cast<double>(data.n))));
  const std::size_t n_train = data.n - n_hold;
  std::vector<double> tx(n_train * data.dim), hx(n_hold * data.dim);
  std::vector<int> ty(n_train), hy(n_hold);
  for (std::size_t i = 0; i < n_train; ++i) {
    std::copy_n(data.x + order[i] * data.dim, data.dim, tx.begin() + i * data.dim);
    ty[i] = data.y[order[i]];
  }
  for (std::size_t i = 0; i < n_hold; ++i) {
    std::copy_n(data.x + order[n_train + i] * data.dim, data.dim, hx.begin() + i * data.dim);
    hy[i] = data.y[order[n_train + i]];
  }
  // The holdout slice can miss classes on tiny sets; that only weakens the
  // stopping signal, never the fitted dictionary.
  const DataView train_view{tx.data(), n_train, data.dim, ty.data()};
  const DataView hold_view{hx.data(), n_hold, data.dim, hy.data()};

  std::vector<double> grad(lay.size()), velocity(lay.size(), 0.0), scratch(lay.size());
  std::vector<double> best = model->params_;
  double best_hold = 1e300;
  int since_best = 0;
  for (int epoch = 0; epoch < params.max_epochs; ++epoch) {
    mlp_loss_and_grad(lay, model->params_, train_view, grad);
    for (std::size_t i = 0; i < lay.size(); ++i) {
      velocity[i] = params.momentum * velocity[i] - params.learning_rate * grad[i];
      model->params_[i] += velocity[i];
    }
    if (n_hold > 0) {
      const double hold_loss = mlp_loss_and_grad(lay, model->params_, hold_view, scratch);
      if (hold_loss < best_hold - 1e-9) {
        best_hold = hold_loss;
        best = model->params_;
        since_best = 0;
      } else if (++since_best >= params.patience) {
        break;
      }
    }
  }
  if (n_hold > 0) model->params_ = best;
  return model;
}

void MlpModel::save(std::ostream& out) const {
  detail::ModelWriter w(out);
  w.line("kind", std::string("mlp"));
  w.line("dim", layout_.n_in);
  w.classes(classes_);
  w.line("n_hidden", layout_.n_hidden);
  w.doubles("params", params_);
}

std::unique_ptr<MlpModel> MlpModel::load(std::istream& in) {
  detail::ModelReader r(in);
  auto model = std::make_unique<MlpModel>();
  if (r.str("kind") != "mlp") throw Error(Errc::Parse, "not an mlp model");
  const std::size_t dim = r.size("dim");
  model->classes_ = r.classes();
  const std::size_t h = r.size("n_hidden");
  model->layout_ = MlpLayout{dim, h, model->classes_.size()};
  model->params_ = r.doubles("params", model->layout_.size());
  return model;
}

}  // namespace exeval
