#include "exeval/classifiers/forest.hpp"
#include <istream>
#include <ostream>

#include <cmath>

#include "exeval/classifiers/serialize.hpp"
#include "exeval/error.hpp"
#include "exeval/parallel.hpp"

namespace exeval {

std::vector<std::size_t> bootstrap_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (auto& i : idx) i = static_cast<std::size_t>(rng.uniform_int(n));
  return idx;
}

std::unique_ptr<RfModel> fit_rf_impl(const RfParams& params, const DataView& data,
                                     const std::vector<std::string>& classes, std::uint64_t seed,
                                     bool parallel) {
  auto model = std::make_unique<RfModel>();
  model->dim_ = data.dim;
  model->params_ = params;
  if (model->params_.features_per_split <= 0)
    model->params_.features_per_split =
        static_cast<int>(std::floor(std::sqrt(static_cast<double>(data.dim))));
  model->classes_ = classes;
  model->trees_.resize(params.n_trees);

  const int n_classes = static_cast<int>(classes.size());
  const auto grow_tree = [&](std::size_t t) {
    Rng rng(derive_seed(seed, 0xf0e5 + t));
    const auto boot = bootstrap_indices(data.n, rng);
    std::vector<double> bx(data.n * data.dim);
    std::vector<int> by(data.n);
    for (std::size_t i = 0; i < data.n; ++i) {
      std::copy_n(data.x + boot[i] * data.dim, data.dim, bx.begin() + i * data.dim);
      by[i] = data.y[boot[i]];
    }
    const DataView view{bx.data(), data.n, data.dim, by.data()};
    model->trees_[t].fit(view, n_classes, model->params_.min_leaf_size,
                         model->params_.features_per_split, &rng);
  };
  if (parallel)
    parallel_for(model->trees_.size(), grow_tree);
  else
    serial_for(model->trees_.size(), grow_tree);
  return model;
}

std::unique_ptr<RfModel> RfModel::fit(const RfParams& params, const DataView& data,
                                      const std::vector<std::string>& classes,
                                      std::uint64_t seed) {
  return fit_rf_impl(params, data, classes, seed, true);
}

std::unique_ptr<RfModel> RfModel::fit_serial(const RfParams& params, const DataView& data,
                                             const std::vector<std::string>& classes,
                                             std::uint64_t seed) {
  return fit_rf_impl(params, data, classes, seed, false);
}

std::vector<double> RfModel::decision_scores(std::span<const double> x) const {
  if (x.size() != dim_) throw Error(Errc::DimensionMismatch, "rf predict dimension");
  std::vector<double> votes(classes_.size(), 0.0);
  for (const auto& tree : trees_) votes[tree.predict_class(x)] += 1.0;
  return votes;
}

void RfModel::save(std::ostream& out) const {
  detail::ModelWriter w(out);
  w.line("kind", std::string("rf"));
  w.line("dim", dim_);
  w.classes(classes_);
  w.ints("rf_params", {params_.n_trees, params_.min_leaf_size, params_.features_per_split});
  for (const auto& tree : trees_) tree.write(out);
}

std::unique_ptr<RfModel> RfModel::load(std::istream& in) {
  detail::ModelReader r(in);
  auto model = std::make_unique<RfModel>();
  if (r.str("kind") != "rf") throw Error(Errc::Parse, "not an rf model");
  model->dim_ = r.size("dim");
  model->classes_ = r.classes();
  const auto p = r.ints("rf_params", 3);
  model->params_ = {p[0], p[1], p[2]};
  model->trees_.resize(p[0]);
  for (auto& tree : model->trees_) tree = DecisionTree::read(in);
  return model;
}

}  // namespace exeval
