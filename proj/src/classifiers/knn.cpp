#include "exeval/classifiers/knn.hpp"
#include <istream>
#include <ostream>

#include <algorithm>

#include "exeval/classifiers/serialize.hpp"
#include "exeval/error.hpp"
#include "exeval/matrix.hpp"
#include "exeval/parallel.hpp"

namespace exeval {

std::vector<double> KnnModel::decision_scores(std::span<const double> x) const {
  if (x.size() != dim_) throw Error(Errc::DimensionMismatch, "knn predict dimension");
  const std::size_t n = train_y_.size();
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = train_x_.data() + i * dim_;
    double d2 = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double d = row[j] - x[j];
      d2 += d * d;
    }
    dist[i] = {d2, i};
  }
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_), n);
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
  std::vector<double> votes(classes_.size(), 0.0);
  for (std::size_t i = 0; i < k; ++i) votes[train_y_[dist[i].second]] += 1.0;
  return votes;
}

std::vector<std::size_t> KnnModel::predict_batch(const DataView& queries) const {
  std::vector<std::size_t> out(queries.n);
  parallel_for(queries.n, [&](std::size_t i) { out[i] = predict_index(queries.row(i)); });
  return out;
}

std::vector<std::size_t> KnnModel::predict_batch_serial(const DataView& queries) const {
  std::vector<std::size_t> out(queries.n);
  serial_for(queries.n, [&](std::size_t i) { out[i] = predict_index(queries.row(i)); });
  return out;
}

std::unique_ptr<KnnModel> KnnModel::fit(const KnnParams& params, const DataView& data,
                                        const std::vector<std::string>& classes) {
  if (params.k < 1 || params.k > 20)
    throw Error(Errc::InvalidConfig, "knn k must lie in 1..20");
  auto model = std::make_unique<KnnModel>();
  model->dim_ = data.dim;
  model->k_ = params.k;
  model->classes_ = classes;
  model->train_x_.assign(data.x, data.x + data.n * data.dim);
  model->train_y_.assign(data.y, data.y + data.n);
  return model;
}

void KnnModel::save(std::ostream& out) const {
  detail::ModelWriter w(out);
  w.line("kind", std::string("knn"));
  w.line("dim", dim_);
  w.classes(classes_);
  w.line("k", k_);
  w.ints("train_y", train_y_);
  Matrix m(train_y_.size(), dim_);
  m.data = train_x_;
  w.matrix("train_x", m);
}

std::unique_ptr<KnnModel> KnnModel::load(std::istream& in) {
  detail::ModelReader r(in);
  auto model = std::make_unique<KnnModel>();
  if (r.str("kind") != "knn") throw Error(Errc::Parse, "not a knn model");
  model->dim_ = r.size("dim");
  model->classes_ = r.classes();
  model->k_ = static_cast<int>(r.integer("k"));
  model->train_y_ = r.ints("train_y", detail::kAnyCount);
  model->train_x_ = r.matrix("train_x", model->train_y_.size(), model->dim_).data;
  return model;
}

}  // namespace exeval
