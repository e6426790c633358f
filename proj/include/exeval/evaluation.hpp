#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace exeval {

struct LosoFold {
  std::string test_volunteer;
  std::vector<std::string> validation;  // 5 ids for the full protocol
  std::vector<std::string> train;       // the rest
};

struct LosoPlan {
  std::vector<LosoFold> folds;  // one per volunteer
  std::uint64_t seed = 0;
};

// One fold per volunteer: test volunteer at position i of the (seed-permuted)
// ordering, validation the next 5 positions cyclically, train the remainder.
// Seed 0 keeps the sorted ordering. Needs >= 7 volunteers.
LosoPlan plan_loso(std::vector<std::string> volunteer_ids, std::uint64_t seed);

struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::int64_t> counts;  // row-major; rows = actual, cols = predicted

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::vector<std::string> cls)
      : classes(std::move(cls)), counts(classes.size() * classes.size(), 0) {}

  std::int64_t& at(std::size_t actual, std::size_t predicted) {
    return counts[actual * classes.size() + predicted];
  }
  std::int64_t at(std::size_t actual, std::size_t predicted) const {
    return counts[actual * classes.size() + predicted];
  }
  std::int64_t total() const;
  std::int64_t trace() const;
  void add(const ConfusionMatrix& other);  // elementwise; classes must match
};

ConfusionMatrix confusion(const std::vector<std::string>& truth,
                          const std::vector<std::string>& predictions,
                          const std::vector<std::string>& classes);

// One-vs-rest counts and the five percentage metrics for one class. A metric
// with a zero denominator is undefined: flagged, excluded from macro
// averages, and reported as an explicit marker.
struct Metrics {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  double acc = 0, prec = 0, sens = 0, f1 = 0, spec = 0;
  bool acc_defined = false, prec_defined = false, sens_defined = false, f1_defined = false,
       spec_defined = false;
};

Metrics per_class_metrics(const ConfusionMatrix& m, const std::string& cls);

struct FoldResult {
  ConfusionMatrix matrix;
  std::vector<Metrics> per_class;  // aligned with matrix.classes
  double micro_accuracy = 0.0;     // trace / total, percent
};

FoldResult score_fold(const std::vector<std::string>& truth,
                      const std::vector<std::string>& predictions,
                      const std::vector<std::string>& classes);

struct MetricSummary {
  double acc = 0, prec = 0, sens = 0, f1 = 0, spec = 0;
};

struct AggregateResult {
  ConfusionMatrix summed;                     // elementwise sum over folds
  std::vector<MetricSummary> per_class_mean;  // fold-mean per class (defined folds only)
  MetricSummary headline;                     // class-then-fold macro average
  MetricSummary micro;                        // from the summed confusion
  double mean_fold_micro_accuracy = 0.0;      // volunteer-level aggregation
  std::size_t undefined_exclusions = 0;       // (class, fold, metric) skips
  std::size_t n_folds = 0;
};

AggregateResult aggregate(const std::vector<FoldResult>& folds);

// Quadrant decomposition of a 19-class single-stage confusion matrix. The
// class list must be the canonical one: correct block (with GHT) first, then
// the wrong block. Evaluation errors are the X-C <-> X-W cells; everything
// else off the diagonal is a recognition error.
struct QuadrantAnalysis {
  std::int64_t q1_misrecognitions = 0;    // correct actual, correct predicted
  std::int64_t q2_evaluation_errors = 0;  // X-C predicted X-W
  std::int64_t q2_recognition_errors = 0; // correct actual, other wrong predicted
  std::int64_t q3_evaluation_errors = 0;  // X-W predicted X-C
  std::int64_t q3_recognition_errors = 0; // wrong actual, other correct predicted
  std::int64_t q4_misrecognitions = 0;    // wrong actual, wrong predicted

  std::int64_t total_offdiagonal() const {
    return q1_misrecognitions + q2_evaluation_errors + q2_recognition_errors +
           q3_evaluation_errors + q3_recognition_errors + q4_misrecognitions;
  }
};

QuadrantAnalysis quadrant_analysis(const ConfusionMatrix& m);

}  // namespace exeval
