#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>

#include "exeval/classifiers/common.hpp"
#include "exeval/classifiers/kernels.hpp"
#include "exeval/matrix.hpp"

namespace exeval {

// Soft-margin dual solution of one binary subproblem.
struct BinarySvmResult {
  std::vector<double> alpha;        // raw dual variables, one per sample
  std::vector<std::size_t> sv;      // indices with alpha > 0
  std::vector<double> coef;         // alpha_i * y_i for each support vector
  double bias = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
};

// Sequential minimal optimization with maximal-KKT-violation working-set
// selection. y holds +1/-1. Stops when the violation gap drops below tol.
BinarySvmResult solve_binary_svm(const double* x, std::size_t n, std::size_t dim, const int* y,
                                 const KernelParams& kernel, double c, double tol);

// One-vs-one multiclass SVM with majority voting; vote ties fall back to the
// aggregated decision values, then to the lowest class index.
class SvmModel : public Classifier {
 public:
  struct PairModel {
    int class_a = 0;
    int class_b = 0;
    Matrix support_vectors;      // one row per SV
    std::vector<double> coef;    // alpha * y per SV
    double bias = 0.0;
  };

  std::string kind() const override;
  std::size_t dim() const override { return dim_; }
  const std::vector<std::string>& classes() const override { return classes_; }
  std::vector<double> decision_scores(std::span<const double> x) const override;
  void save(std::ostream& out) const override;

  const KernelParams& kernel() const { return kernel_; }
  const std::vector<PairModel>& pairs() const { return pairs_; }

  static std::unique_ptr<SvmModel> fit(Algo kind, const SvmParams& params, const DataView& data,
                                       const std::vector<std::string>& classes);
  // Serial twin of fit (one-vs-one subproblems solved sequentially); the
  // parallel path must produce an identical model.
  static std::unique_ptr<SvmModel> fit_serial(Algo kind, const SvmParams& params,
                                              const DataView& data,
                                              const std::vector<std::string>& classes);
  static std::unique_ptr<SvmModel> load(std::istream& in);

 private:
  Algo algo_ = Algo::SvmL;
  KernelParams kernel_;
  SvmParams params_;
  std::size_t dim_ = 0;
  std::vector<std::string> classes_;
  std::vector<PairModel> pairs_;

  friend std::unique_ptr<SvmModel> fit_svm_impl(Algo, const SvmParams&, const DataView&,
                                                const std::vector<std::string>&, bool);
};

// Default gaussian bandwidth: 1 / (dim * mean per-column variance).
double default_gaussian_gamma(const DataView& data);

}  // namespace exeval
