#pragma once

#include <cstdint>
#include <map>

#include "exeval/evaluation.hpp"
#include "exeval/pipeline.hpp"

namespace exeval {

struct LosoRunConfig {
  PipelineConfig pipeline;
  std::uint64_t seed = 0;
};

struct SchemeReport {
  std::vector<std::string> classes;
  std::vector<FoldResult> folds;
  AggregateResult aggregate;
};

// Everything one LOSO run produces. For the single-stage pipelines only
// `primary` is filled (19- or 12-class space). TwoStage additionally carries
// the stage-1 report, the joint end-to-end report and one binary report per
// evaluated exercise.
struct LosoOutcome {
  LosoPlan plan;
  SchemeReport primary;
  SchemeReport end_to_end;                     // TwoStage only
  std::map<ExerciseKind, SchemeReport> stage2; // TwoStage only
  std::vector<PipelineFitReport> fit_reports;  // one per fold
  std::size_t dropped_short_series = 0;
};

// Runs the full leave-one-subject-out protocol: per fold, fit on the train
// volunteers (tuning on the validation volunteers) and score the test
// volunteer's windows. Folds execute in plan order; all randomness comes
// from seeds derived per fold.
LosoOutcome run_loso(const WindowSet& windows, const LosoRunConfig& config);

}  // namespace exeval
