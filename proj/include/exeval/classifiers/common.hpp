#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace exeval {

enum class Algo { SvmL, SvmP, SvmG, Dt, Rf, Knn, Elm, Mlp };

std::string to_string(Algo a);            // "svm-l", "dt", ...
Algo algo_from_string(const std::string& s);

struct SvmParams {
  double c = 1.0;
  double gamma = 0.0;  // 0 = 1 / (dim * mean feature variance) for gaussian, 1/dim for polynomial
  int degree = 3;
  double coef0 = 1.0;
  double tol = 1e-3;   // KKT violation stopping tolerance
};

struct DtParams {
  int min_leaf_size = 1;
};

struct RfParams {
  int n_trees = 100;
  int min_leaf_size = 1;
  int features_per_split = 0;  // 0 = floor(sqrt(dim))
};

struct KnnParams {
  int k = 5;  // 1..20
};

struct ElmParams {
  int n_hidden = 100;  // 10..1000
  double ridge = 1e-6;
};

// The hidden-size heuristic is ambiguous in its source; both readings are
// selectable.
enum class MlpHiddenRule { MeanInOut, HalfInputs };

struct MlpParams {
  int n_hidden = 0;  // 0 = apply the rule
  MlpHiddenRule hidden_rule = MlpHiddenRule::MeanInOut;
  int max_epochs = 400;
  double learning_rate = 0.05;
  double momentum = 0.9;
  double holdout_fraction = 0.1;  // early-stopping slice of the training data
  int patience = 30;
};

struct AlgoConfig {
  Algo kind = Algo::SvmL;
  SvmParams svm;
  DtParams dt;
  RfParams rf;
  KnnParams knn;
  ElmParams elm;
  MlpParams mlp;

  std::string describe() const;
};

// Uniform train/predict contract. Models are immutable after training and
// safe for concurrent prediction.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::string kind() const = 0;
  virtual std::size_t dim() const = 0;
  virtual const std::vector<std::string>& classes() const = 0;
  // One score per class; the predicted label is the argmax.
  virtual std::vector<double> decision_scores(std::span<const double> x) const = 0;
  virtual void save(std::ostream& out) const = 0;

  std::size_t predict_index(std::span<const double> x) const;
  const std::string& predict(std::span<const double> x) const;
};

// Argmax with ties broken by the lowest index.
std::size_t argmax_score(std::span<const double> scores);

// Labeled training view used by all trainers: flat row-major features and
// integer class ids into a dictionary.
struct DataView {
  const double* x = nullptr;
  std::size_t n = 0;
  std::size_t dim = 0;
  const int* y = nullptr;  // nullptr for unlabeled prediction batches
  std::span<const double> row(std::size_t i) const { return {x + i * dim, dim}; }
};

// Validates inputs (sizes, finite features, at least two distinct labels),
// builds the class dictionary (sorted unique labels) and dispatches to the
// family trainer.
std::unique_ptr<Classifier> train(const AlgoConfig& config, std::span<const double> x,
                                  std::size_t dim, const std::vector<std::string>& y,
                                  std::uint64_t seed);

// Deserializes any model written by Classifier::save.
std::unique_ptr<Classifier> load_model(std::istream& in);

}  // namespace exeval
