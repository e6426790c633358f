#include "exeval/runner.hpp"

#include <algorithm>
#include <set>

#include "exeval/error.hpp"
#include "exeval/parallel.hpp"
#include "exeval/rng.hpp"

namespace exeval {

namespace {

const std::vector<std::string>& primary_classes(PipelineKind kind) {
  switch (kind) {
    case PipelineKind::ReEv: return reev_classes();
    case PipelineKind::ReCW: return recw_classes();
    case PipelineKind::TwoStage: return stage1_classes();
  }
  return reev_classes();
}

}  // namespace

LosoOutcome run_loso(const WindowSet& windows, const LosoRunConfig& config) {
  std::set<std::string> id_set;
  for (const auto& meta : windows.meta) id_set.insert(meta.volunteer_id);
  std::vector<std::string> ids(id_set.begin(), id_set.end());

  LosoOutcome outcome;
  outcome.dropped_short_series = windows.dropped_short_series;
  outcome.plan = plan_loso(ids, config.seed);
  const bool two_stage = config.pipeline.kind == PipelineKind::TwoStage;

  outcome.primary.classes = primary_classes(config.pipeline.kind);
  if (two_stage) {
    outcome.end_to_end.classes = reev_classes();
    for (ExerciseKind ex : all_exercises())
      if (ex != ExerciseKind::GHT) outcome.stage2[ex].classes = stage2_classes();
  }
  outcome.fit_reports.resize(outcome.plan.folds.size());

  for (std::size_t f = 0; f < outcome.plan.folds.size(); ++f) {
    const LosoFold& fold = outcome.plan.folds[f];
    const auto member = [](const std::vector<std::string>& set, const std::string& id) {
      return std::find(set.begin(), set.end(), id) != set.end();
    };
    std::vector<std::size_t> train_rows, val_rows, test_rows;
    for (std::size_t r = 0; r < windows.size(); ++r) {
      const std::string& vid = windows.meta[r].volunteer_id;
      if (vid == fold.test_volunteer)
        test_rows.push_back(r);
      else if (member(fold.validation, vid))
        val_rows.push_back(r);
      else
        train_rows.push_back(r);
    }

    const PipelineModel model =
        fit_pipeline(config.pipeline, windows, train_rows, val_rows,
                     derive_seed(config.seed, 0xf01d + f), &outcome.fit_reports[f]);

    // Score the held-out volunteer.
    const std::size_t n_test = test_rows.size();
    std::vector<std::string> primary_pred(n_test);
    std::vector<Decision> decisions(n_test);
    parallel_for(n_test, [&](std::size_t i) {
      const auto row = windows.row(test_rows[i]);
      if (two_stage) {
        decisions[i] = model.predict(row);
        primary_pred[i] = to_string(*decisions[i].exercise);
      } else {
        primary_pred[i] = model.predict_primary_label(row);
      }
    });

    std::vector<std::string> primary_truth(n_test);
    for (std::size_t i = 0; i < n_test; ++i)
      primary_truth[i] = scheme_truth_label(config.pipeline.kind, windows.meta[test_rows[i]]);
    outcome.primary.folds.push_back(
        score_fold(primary_truth, primary_pred, outcome.primary.classes));

    if (two_stage) {
      std::vector<std::string> joint_truth(n_test), joint_pred(n_test);
      for (std::size_t i = 0; i < n_test; ++i) {
        joint_truth[i] = joint_truth_label(windows.meta[test_rows[i]]);
        joint_pred[i] = joint_decision_label(decisions[i]);
      }
      outcome.end_to_end.folds.push_back(
          score_fold(joint_truth, joint_pred, outcome.end_to_end.classes));

      // Per-exercise evaluation block, organized by the true exercise; the
      // predicted verdict comes from the end-to-end decision, so stage-1
      // routing errors stay in the count.
      for (auto& [ex, report] : outcome.stage2) {
        std::vector<std::string> truth, pred;
        for (std::size_t i = 0; i < n_test; ++i) {
          if (windows.meta[test_rows[i]].exercise != ex) continue;
          truth.push_back(label_stage2(windows.meta[test_rows[i]].performance));
          pred.push_back(decisions[i].performance == Decision::Perf::W ? "W" : "C");
        }
        report.folds.push_back(score_fold(truth, pred, report.classes));
      }
    }
  }

  outcome.primary.aggregate = aggregate(outcome.primary.folds);
  if (two_stage) {
    outcome.end_to_end.aggregate = aggregate(outcome.end_to_end.folds);
    for (auto& [ex, report] : outcome.stage2) report.aggregate = aggregate(report.folds);
  }
  return outcome;
}

}  // namespace exeval
