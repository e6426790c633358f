#pragma once

#include <cstdint>
#include <memory>

#include "exeval/classifiers/tree.hpp"

namespace exeval {

// The bootstrap resample used for tree t; exposed so tests can replay it.
std::vector<std::size_t> bootstrap_indices(std::size_t n, Rng& rng);

// Bootstrap-aggregated CART trees with random feature subsets per split.
// Tree t draws everything from derive_seed(seed, t), so the forest is
// identical whether trees are trained in parallel or serially.
class RfModel : public Classifier {
 public:
  std::string kind() const override { return "rf"; }
  std::size_t dim() const override { return dim_; }
  const std::vector<std::string>& classes() const override { return classes_; }
  std::vector<double> decision_scores(std::span<const double> x) const override;
  void save(std::ostream& out) const override;

  const std::vector<DecisionTree>& trees() const { return trees_; }

  static std::unique_ptr<RfModel> fit(const RfParams& params, const DataView& data,
                                      const std::vector<std::string>& classes,
                                      std::uint64_t seed);
  static std::unique_ptr<RfModel> fit_serial(const RfParams& params, const DataView& data,
                                             const std::vector<std::string>& classes,
                                             std::uint64_t seed);
  static std::unique_ptr<RfModel> load(std::istream& in);

 private:
  std::size_t dim_ = 0;
  RfParams params_;
  std::vector<std::string> classes_;
  std::vector<DecisionTree> trees_;

  friend std::unique_ptr<RfModel> fit_rf_impl(const RfParams&, const DataView&,
                                              const std::vector<std::string>&, std::uint64_t,
                                              bool);
};

}  // namespace exeval
