#include "exeval/classifiers/svm.hpp"
#include <istream>
#include <ostream>

#include <algorithm>
#include <cmath>
#include <limits>

#include "exeval/classifiers/serialize.hpp"
#include "exeval/error.hpp"
#include "exeval/parallel.hpp"

namespace exeval {

namespace {

// Kernel matrix access with a full precomputed Gram for small subproblems and
// a bounded FIFO row cache above that.
class KernelCache {
 public:
  KernelCache(const double* x, std::size_t n, std::size_t dim, const KernelParams& kernel)
      : x_(x), n_(n), dim_(dim), kernel_(kernel) {
    if (n_ <= kFullLimit) {
      full_.assign(n_ * n_, 0.0);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) {
          const double v = kernel_eval(kernel_, row_x(i), row_x(j));
          full_[i * n_ + j] = v;
          full_[j * n_ + i] = v;
        }
    } else {
      rows_.assign(kCacheRows, {});
      owners_.assign(kCacheRows, npos);
      slot_of_.assign(n_, npos);
    }
    diag_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
      diag_[i] = full_.empty() ? kernel_eval(kernel_, row_x(i), row_x(i)) : full_[i * n_ + i];
  }

  const double* row(std::size_t i) {
    if (!full_.empty()) return full_.data() + i * n_;
    if (slot_of_[i] != npos) return rows_[slot_of_[i]].data();
    const std::size_t slot = next_slot_;
    next_slot_ = (next_slot_ + 1) % kCacheRows;
    if (owners_[slot] != npos) slot_of_[owners_[slot]] = npos;
    owners_[slot] = i;
    slot_of_[i] = slot;
    auto& buf = rows_[slot];
    buf.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) buf[j] = kernel_eval(kernel_, row_x(i), row_x(j));
    return buf.data();
  }

  double diag(std::size_t i) const { return diag_[i]; }

 private:
  static constexpr std::size_t kFullLimit = 2048;
  static constexpr std::size_t kCacheRows = 512;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::span<const double> row_x(std::size_t i) const { return {x_ + i * dim_, dim_}; }

  const double* x_;
  std::size_t n_, dim_;
  KernelParams kernel_;
  std::vector<double> full_;
  std::vector<double> diag_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::size_t> owners_;
  std::vector<std::size_t> slot_of_;
  std::size_t next_slot_ = 0;
};

}  // namespace

BinarySvmResult solve_binary_svm(const double* x, std::size_t n, std::size_t dim, const int* y,
                                 const KernelParams& kernel, double c, double tol) {
  BinarySvmResult result;
  result.alpha.assign(n, 0.0);
  // Gradient of the dual objective in minimization form: G = Q*alpha - e.
  std::vector<double> grad(n, -1.0);
  KernelCache cache(x, n, dim, kernel);

  const std::size_t max_iter = std::max<std::size_t>(10'000'000 / std::max<std::size_t>(n, 1),
                                                     100 * n + 1000);
  double m = 0.0, big_m = 0.0;
  std::size_t iter = 0;
  for (; iter < max_iter; ++iter) {
    // Maximal violating pair: i in I_up with the largest -y*G, j in I_low
    // with the smallest.
    std::size_t i = n, j = n;
    m = -std::numeric_limits<double>::infinity();
    big_m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      const bool in_up = (y[k] > 0 && result.alpha[k] < c) || (y[k] < 0 && result.alpha[k] > 0.0);
      const bool in_low = (y[k] > 0 && result.alpha[k] > 0.0) || (y[k] < 0 && result.alpha[k] < c);
      const double v = -y[k] * grad[k];
      if (in_up && v > m) {
        m = v;
        i = k;
      }
      if (in_low && v < big_m) {
        big_m = v;
        j = k;
      }
    }
    if (i == n || j == n || m - big_m < tol) break;

    const double kii = cache.diag(i);
    const double kjj = cache.diag(j);
    const double* row_i = cache.row(i);
    const double kij = row_i[j];
    double quad = kii + kjj - 2.0 * kij;
    if (quad <= 0.0) quad = 1e-12;

    const double old_ai = result.alpha[i];
    const double old_aj = result.alpha[j];
    const double step = (-y[i] * grad[i] + y[j] * grad[j]) / quad;
    result.alpha[i] += y[i] * step;
    result.alpha[j] -= y[j] * step;
    // Clip to the box while preserving y' * alpha exactly.
    const double sum = y[i] * old_ai + y[j] * old_aj;
    result.alpha[i] = std::clamp(result.alpha[i], 0.0, c);
    result.alpha[j] = y[j] * (sum - y[i] * result.alpha[i]);
    result.alpha[j] = std::clamp(result.alpha[j], 0.0, c);
    result.alpha[i] = y[i] * (sum - y[j] * result.alpha[j]);

    const double dai = result.alpha[i] - old_ai;
    const double daj = result.alpha[j] - old_aj;
    if (dai == 0.0 && daj == 0.0) break;  // numerically stuck; KKT gap is tiny
    const double* row_j = cache.row(j);
    for (std::size_t k = 0; k < n; ++k)
      grad[k] += y[k] * (y[i] * row_i[k] * dai + y[j] * row_j[k] * daj);
  }
  result.iterations = iter;
  result.converged = iter < max_iter;

  // Bias from the free support vectors; midpoint of the violation interval
  // when every alpha sits on the box boundary.
  double bias_sum = 0.0;
  std::size_t n_free = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (result.alpha[k] > 0.0 && result.alpha[k] < c) {
      bias_sum += -y[k] * grad[k];
      ++n_free;
    }
  }
  result.bias = n_free > 0 ? bias_sum / static_cast<double>(n_free) : 0.5 * (m + big_m);

  for (std::size_t k = 0; k < n; ++k) {
    if (result.alpha[k] > 0.0) {
      result.sv.push_back(k);
      result.coef.push_back(result.alpha[k] * y[k]);
    }
  }
  return result;
}

double default_gaussian_gamma(const DataView& data) {
  if (data.n == 0 || data.dim == 0) return 1.0;
  double total_var = 0.0;
  for (std::size_t j = 0; j < data.dim; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) mean += data.x[i * data.dim + j];
    mean /= static_cast<double>(data.n);
    double var = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
      const double d = data.x[i * data.dim + j] - mean;
      var += d * d;
    }
    total_var += var / static_cast<double>(data.n);
  }
  const double mean_var = total_var / static_cast<double>(data.dim);
  if (mean_var <= 0.0) return 1.0;
  return 1.0 / (static_cast<double>(data.dim) * mean_var);
}

namespace {

KernelParams resolve_kernel(Algo kind, const SvmParams& params, const DataView& data) {
  KernelParams kp;
  switch (kind) {
    case Algo::SvmL:
      kp.kind = KernelKind::Linear;
      break;
    case Algo::SvmP:
      kp.kind = KernelKind::Polynomial;
      kp.gamma = params.gamma > 0.0 ? params.gamma : 1.0 / static_cast<double>(data.dim);
      kp.degree = params.degree;
      kp.coef0 = params.coef0;
      break;
    case Algo::SvmG:
      kp.kind = KernelKind::Gaussian;
      kp.gamma = params.gamma > 0.0 ? params.gamma : default_gaussian_gamma(data);
      break;
    default:
      throw Error(Errc::InvalidConfig, "not an SVM algorithm");
  }
  return kp;
}

}  // namespace

std::unique_ptr<SvmModel> fit_svm_impl(Algo kind, const SvmParams& params, const DataView& data,
                                       const std::vector<std::string>& classes, bool parallel) {
  auto model = std::make_unique<SvmModel>();
  model->algo_ = kind;
  model->params_ = params;
  model->dim_ = data.dim;
  model->classes_ = classes;
  model->kernel_ = resolve_kernel(kind, params, data);

  const int n_classes = static_cast<int>(classes.size());
  struct PairJob {
    int a, b;
  };
  std::vector<PairJob> jobs;
  for (int a = 0; a < n_classes; ++a)
    for (int b = a + 1; b < n_classes; ++b) jobs.push_back({a, b});
  model->pairs_.resize(jobs.size());

  const auto solve_pair = [&](std::size_t p) {
    const auto [a, b] = jobs[p];
    std::vector<double> px;
    std::vector<int> py;
    for (std::size_t i = 0; i < data.n; ++i) {
      if (data.y[i] != a && data.y[i] != b) continue;
      const auto row = data.row(i);
      px.insert(px.end(), row.begin(), row.end());
      py.push_back(data.y[i] == a ? 1 : -1);
    }
    const std::size_t pn = py.size();
    auto bin = solve_binary_svm(px.data(), pn, data.dim, py.data(), model->kernel_, params.c,
                                params.tol);
    SvmModel::PairModel& pm = model->pairs_[p];
    pm.class_a = a;
    pm.class_b = b;
    pm.bias = bin.bias;
    pm.coef = bin.coef;
    pm.support_vectors = Matrix(bin.sv.size(), data.dim);
    for (std::size_t s = 0; s < bin.sv.size(); ++s)
      std::copy_n(px.data() + bin.sv[s] * data.dim, data.dim, pm.support_vectors.row(s));
  };
  if (parallel)
    parallel_for(jobs.size(), solve_pair);
  else
    serial_for(jobs.size(), solve_pair);
  return model;
}

std::unique_ptr<SvmModel> SvmModel::fit(Algo kind, const SvmParams& params, const DataView& data,
                                        const std::vector<std::string>& classes) {
  return fit_svm_impl(kind, params, data, classes, true);
}

std::unique_ptr<SvmModel> SvmModel::fit_serial(Algo kind, const SvmParams& params,
                                               const DataView& data,
                                               const std::vector<std::string>& classes) {
  return fit_svm_impl(kind, params, data, classes, false);
}

std::string SvmModel::kind() const { return to_string(algo_); }

std::vector<double> SvmModel::decision_scores(std::span<const double> x) const {
  if (x.size() != dim_) throw Error(Errc::DimensionMismatch, "svm predict dimension");
  std::vector<double> votes(classes_.size(), 0.0);
  std::vector<double> decsum(classes_.size(), 0.0);
  for (const auto& pm : pairs_) {
    double f = pm.bias;
    for (std::size_t s = 0; s < pm.coef.size(); ++s)
      f += pm.coef[s] *
           kernel_eval(kernel_, {pm.support_vectors.row(s), dim_}, x);
    if (f >= 0.0)
      votes[pm.class_a] += 1.0;
    else
      votes[pm.class_b] += 1.0;
    decsum[pm.class_a] += f;
    decsum[pm.class_b] -= f;
  }
  // Vote counts carry the decision; the aggregated decision values break
  // vote ties through a (0,1) term that can never overturn a full vote.
  for (std::size_t c = 0; c < votes.size(); ++c)
    votes[c] += 1.0 / (1.0 + std::exp(-decsum[c]));
  return votes;
}

void SvmModel::save(std::ostream& out) const {
  detail::ModelWriter w(out);
  w.line("kind", to_string(algo_));
  w.line("dim", dim_);
  w.classes(classes_);
  w.line("kernel", static_cast<int>(kernel_.kind));
  w.doubles("kernel_params", {kernel_.gamma, static_cast<double>(kernel_.degree), kernel_.coef0});
  w.doubles("svm_params", {params_.c, params_.gamma, static_cast<double>(params_.degree),
                           params_.coef0, params_.tol});
  w.line("pairs", pairs_.size());
  for (const auto& pm : pairs_) {
    w.line("pair", std::to_string(pm.class_a) + " " + std::to_string(pm.class_b));
    w.line("n_sv", pm.coef.size());
    w.doubles("bias", {pm.bias});
    w.doubles("coef", pm.coef);
    w.matrix("sv", pm.support_vectors);
  }
}

std::unique_ptr<SvmModel> SvmModel::load(std::istream& in) {
  detail::ModelReader r(in);
  auto model = std::make_unique<SvmModel>();
  model->algo_ = algo_from_string(r.str("kind"));
  model->dim_ = r.size("dim");
  model->classes_ = r.classes();
  model->kernel_.kind = static_cast<KernelKind>(r.integer("kernel"));
  const auto kp = r.doubles("kernel_params", 3);
  model->kernel_.gamma = kp[0];
  model->kernel_.degree = static_cast<int>(kp[1]);
  model->kernel_.coef0 = kp[2];
  const auto sp = r.doubles("svm_params", 5);
  model->params_ = {sp[0], sp[1], static_cast<int>(sp[2]), sp[3], sp[4]};
  const std::size_t n_pairs = r.size("pairs");
  model->pairs_.resize(n_pairs);
  for (auto& pm : model->pairs_) {
    const auto ab = r.str("pair");
    const auto sep = ab.find(' ');
    pm.class_a = std::stoi(ab.substr(0, sep));
    pm.class_b = std::stoi(ab.substr(sep + 1));
    const std::size_t n_sv = r.size("n_sv");
    pm.bias = r.doubles("bias", 1)[0];
    pm.coef = r.doubles("coef", n_sv);
    pm.support_vectors = r.matrix("sv", n_sv, model->dim_);
  }
  return model;
}

}  // namespace exeval
