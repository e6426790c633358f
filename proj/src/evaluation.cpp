#include "exeval/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "exeval/error.hpp"
#include "exeval/labels.hpp"
#include "exeval/rng.hpp"

namespace exeval {

LosoPlan plan_loso(std::vector<std::string> volunteer_ids, std::uint64_t seed) {
  std::sort(volunteer_ids.begin(), volunteer_ids.end());
  volunteer_ids.erase(std::unique(volunteer_ids.begin(), volunteer_ids.end()),
                      volunteer_ids.end());
  const std::size_t n = volunteer_ids.size();
  if (n < 7)
    throw Error(Errc::TooFewVolunteers,
                "LOSO needs at least 7 volunteers (1 test + 5 validation + 1 train), got " +
                    std::to_string(n));
  if (seed != 0) {
    Rng rng(derive_seed(seed, 0x1050));
    rng.shuffle(volunteer_ids);
  }
  LosoPlan plan;
  plan.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    LosoFold fold;
    fold.test_volunteer = volunteer_ids[i];
    for (std::size_t k = 1; k <= 5; ++k) fold.validation.push_back(volunteer_ids[(i + k) % n]);
    for (std::size_t k = 6; k < n; ++k) fold.train.push_back(volunteer_ids[(i + k) % n]);
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

std::int64_t ConfusionMatrix::total() const {
  std::int64_t t = 0;
  for (std::int64_t c : counts) t += c;
  return t;
}

std::int64_t ConfusionMatrix::trace() const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) t += at(i, i);
  return t;
}

void ConfusionMatrix::add(const ConfusionMatrix& other) {
  if (other.classes != classes) throw Error(Errc::ClassMismatch, "confusion class lists differ");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
}

ConfusionMatrix confusion(const std::vector<std::string>& truth,
                          const std::vector<std::string>& predictions,
                          const std::vector<std::string>& classes) {
  if (truth.size() != predictions.size())
    throw Error(Errc::LengthMismatch, "truth/prediction lengths differ");
  ConfusionMatrix m(classes);
  const auto index_of = [&](const std::string& label) -> std::size_t {
    const auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) throw Error(Errc::UnknownLabel, "label '" + label + "' not in class list");
    return static_cast<std::size_t>(it - classes.begin());
  };
  for (std::size_t i = 0; i < truth.size(); ++i) ++m.at(index_of(truth[i]), index_of(predictions[i]));
  return m;
}

Metrics per_class_metrics(const ConfusionMatrix& m, const std::string& cls) {
  const auto it = std::find(m.classes.begin(), m.classes.end(), cls);
  if (it == m.classes.end()) throw Error(Errc::UnknownLabel, "class '" + cls + "' not in matrix");
  const std::size_t c = static_cast<std::size_t>(it - m.classes.begin());

  const std::int64_t total = m.total();
  std::int64_t row_sum = 0, col_sum = 0;
  for (std::size_t j = 0; j < m.classes.size(); ++j) {
    row_sum += m.at(c, j);
    col_sum += m.at(j, c);
  }
  Metrics r;
  r.tp = m.at(c, c);
  r.fn = row_sum - r.tp;           // positives P = row_sum
  r.fp = col_sum - r.tp;
  r.tn = (total - row_sum) - r.fp; // negatives N = total - P

  const auto ratio = [](std::int64_t num, std::int64_t den, double& out, bool& defined) {
    defined = den > 0;
    out = defined ? 100.0 * static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  ratio(r.tp + r.tn, total, r.acc, r.acc_defined);
  ratio(r.tp, r.tp + r.fp, r.prec, r.prec_defined);
  ratio(r.tp, r.tp + r.fn, r.sens, r.sens_defined);
  ratio(2 * r.tp, 2 * r.tp + r.fp + r.fn, r.f1, r.f1_defined);
  ratio(r.tn, r.tn + r.fp, r.spec, r.spec_defined);
  return r;
}

FoldResult score_fold(const std::vector<std::string>& truth,
                      const std::vector<std::string>& predictions,
                      const std::vector<std::string>& classes) {
  FoldResult fold;
  fold.matrix = confusion(truth, predictions, classes);
  for (const auto& cls : classes) fold.per_class.push_back(per_class_metrics(fold.matrix, cls));
  const std::int64_t total = fold.matrix.total();
  fold.micro_accuracy =
      total > 0 ? 100.0 * static_cast<double>(fold.matrix.trace()) / static_cast<double>(total)
                : 0.0;
  return fold;
}

namespace {

struct RunningMean {
  double sum = 0.0;
  std::size_t n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
};

}  // namespace

AggregateResult aggregate(const std::vector<FoldResult>& folds) {
  if (folds.empty()) throw Error(Errc::InsufficientData, "no folds to aggregate");
  const auto& classes = folds.front().matrix.classes;
  AggregateResult agg;
  agg.n_folds = folds.size();
  agg.summed = ConfusionMatrix(classes);

  RunningMean fold_micro;
  for (const auto& fold : folds) {
    if (fold.matrix.classes != classes)
      throw Error(Errc::ClassMismatch, "folds use different class lists");
    agg.summed.add(fold.matrix);
    fold_micro.add(fold.micro_accuracy);
  }
  agg.mean_fold_micro_accuracy = fold_micro.mean();

  // Class-then-fold macro: per class, mean over folds where the metric is
  // defined; the headline averages those per-class means over classes.
  RunningMean head_acc, head_prec, head_sens, head_f1, head_spec;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    RunningMean acc, prec, sens, f1, spec;
    for (const auto& fold : folds) {
      const Metrics& m = fold.per_class[c];
      if (m.acc_defined) acc.add(m.acc); else ++agg.undefined_exclusions;
      if (m.prec_defined) prec.add(m.prec); else ++agg.undefined_exclusions;
      if (m.sens_defined) sens.add(m.sens); else ++agg.undefined_exclusions;
      if (m.f1_defined) f1.add(m.f1); else ++agg.undefined_exclusions;
      if (m.spec_defined) spec.add(m.spec); else ++agg.undefined_exclusions;
    }
    MetricSummary cls_mean{acc.mean(), prec.mean(), sens.mean(), f1.mean(), spec.mean()};
    agg.per_class_mean.push_back(cls_mean);
    if (acc.n > 0) head_acc.add(cls_mean.acc);
    if (prec.n > 0) head_prec.add(cls_mean.prec);
    if (sens.n > 0) head_sens.add(cls_mean.sens);
    if (f1.n > 0) head_f1.add(cls_mean.f1);
    if (spec.n > 0) head_spec.add(cls_mean.spec);
  }
  agg.headline = {head_acc.mean(), head_prec.mean(), head_sens.mean(), head_f1.mean(),
                  head_spec.mean()};

  RunningMean mic_acc, mic_prec, mic_sens, mic_f1, mic_spec;
  for (const auto& cls : classes) {
    const Metrics m = per_class_metrics(agg.summed, cls);
    if (m.acc_defined) mic_acc.add(m.acc);
    if (m.prec_defined) mic_prec.add(m.prec);
    if (m.sens_defined) mic_sens.add(m.sens);
    if (m.f1_defined) mic_f1.add(m.f1);
    if (m.spec_defined) mic_spec.add(m.spec);
  }
  agg.micro = {mic_acc.mean(), mic_prec.mean(), mic_sens.mean(), mic_f1.mean(), mic_spec.mean()};
  return agg;
}

QuadrantAnalysis quadrant_analysis(const ConfusionMatrix& m) {
  if (m.classes != reev_classes())
    throw Error(Errc::SchemeMismatch, "quadrant analysis needs the 19-class single-stage layout");
  const std::size_t n_correct = 10;  // correct block incl. GHT
  const auto block_exercise = [&](std::size_t idx) {
    // Class index -> exercise code string (strips the -C / -W suffix).
    const std::string& label = m.classes[idx];
    return label == "GHT" ? label : label.substr(0, 3);
  };
  QuadrantAnalysis q;
  for (std::size_t a = 0; a < m.classes.size(); ++a) {
    for (std::size_t p = 0; p < m.classes.size(); ++p) {
      if (a == p) continue;
      const std::int64_t v = m.at(a, p);
      if (v == 0) continue;
      const bool a_correct = a < n_correct;
      const bool p_correct = p < n_correct;
      const bool same_exercise = block_exercise(a) == block_exercise(p);
      if (a_correct && p_correct) {
        q.q1_misrecognitions += v;
      } else if (a_correct && !p_correct) {
        (same_exercise ? q.q2_evaluation_errors : q.q2_recognition_errors) += v;
      } else if (!a_correct && p_correct) {
        (same_exercise ? q.q3_evaluation_errors : q.q3_recognition_errors) += v;
      } else {
        q.q4_misrecognitions += v;
      }
    }
  }
  return q;
}

}  // namespace exeval
