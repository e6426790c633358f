#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>

#include "exeval/classifiers/common.hpp"
#include "exeval/features.hpp"
#include "exeval/labels.hpp"

namespace exeval {

enum class PipelineKind { ReEv, ReCW, TwoStage };

std::string to_string(PipelineKind k);  // "reev", "recw", "two-stage"
PipelineKind pipeline_from_string(const std::string& s);

struct PipelineConfig {
  PipelineKind kind = PipelineKind::ReEv;
  AlgoConfig algo;
  // Candidate algorithms for the per-exercise evaluators; empty means the
  // primary algo everywhere.
  std::vector<AlgoConfig> stage2_candidates;
  bool standardize = true;
  bool tune = false;  // grid-search the family hyperparameters on validation
};

struct PipelineFitReport {
  bool undersized_wu = false;
  bool undersized_wl = false;
  std::size_t wu_selected = 0;
  std::size_t wl_selected = 0;
  std::size_t training_rows = 0;
  AlgoConfig chosen_algo;                           // after tuning
  std::map<ExerciseKind, AlgoConfig> stage2_algos;  // TwoStage only
};

// A window-level decision: the recognized exercise (or the limb-group wrong
// marker for ReC-W) plus the performance verdict.
struct Decision {
  enum class Perf { C, W, Unknown };
  std::optional<ExerciseKind> exercise;
  std::optional<LimbGroup> wrong_limb;
  Perf performance = Perf::Unknown;
  std::string native_label;  // scheme-native class string
};

class PipelineModel {
 public:
  PipelineKind kind = PipelineKind::ReEv;
  bool standardized = true;
  Standardizer standardizer;
  std::unique_ptr<Classifier> primary;  // 19- / 12- / 10-class model
  std::map<ExerciseKind, std::unique_ptr<Classifier>> evaluators;  // TwoStage: 9 entries

  // Scheme-native label of the single-stage model (stage-1 label for
  // TwoStage). The input is a raw, unstandardized feature row.
  std::string predict_primary_label(std::span<const double> raw) const;
  Decision predict(std::span<const double> raw) const;

  void save(std::ostream& out) const;
  static PipelineModel load(std::istream& in);
  void save_file(const std::filesystem::path& file) const;
  static PipelineModel load_file(const std::filesystem::path& file);

 private:
  std::vector<double> standardize_row(std::span<const double> raw) const;
};

// Fits one of the three architectures on the train rows. Validation rows
// drive hyperparameter tuning and evaluator selection and are never
// subsampled. ReC-W balances its wrong pools with the doubling rule before
// training; TwoStage trains the stage-2 evaluators on ground-truth exercise
// windows.
PipelineModel fit_pipeline(const PipelineConfig& config, const WindowSet& windows,
                           const std::vector<std::size_t>& train_rows,
                           const std::vector<std::size_t>& validation_rows, std::uint64_t seed,
                           PipelineFitReport* report = nullptr);

struct CandidateMetrics {
  double accuracy = 0.0;
  double f1 = 0.0;
};

// Per exercise, the candidate with the highest validation accuracy; ties go
// to the higher F1, then the earlier candidate. Every exercise must have one
// entry per candidate.
std::map<ExerciseKind, std::size_t> select_stage2_algos(
    std::size_t n_candidates,
    const std::map<ExerciseKind, std::vector<CandidateMetrics>>& validation_results);

// Ground-truth label of a window under the model's scheme (stage-1 label for
// TwoStage).
std::string scheme_truth_label(PipelineKind kind, const WindowMeta& meta);

// Ground truth / decision in the 19-class joint space, used for end-to-end
// scoring of TwoStage.
std::string joint_truth_label(const WindowMeta& meta);
std::string joint_decision_label(const Decision& decision);

}  // namespace exeval
