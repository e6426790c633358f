#include "exeval/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "exeval/classifiers/serialize.hpp"
#include "exeval/classifiers/tune.hpp"
#include "exeval/error.hpp"
#include "exeval/evaluation.hpp"
#include "exeval/parallel.hpp"
#include "exeval/rng.hpp"

namespace exeval {

std::string to_string(PipelineKind k) {
  switch (k) {
    case PipelineKind::ReEv: return "reev";
    case PipelineKind::ReCW: return "recw";
    case PipelineKind::TwoStage: return "two-stage";
  }
  return "?";
}

PipelineKind pipeline_from_string(const std::string& s) {
  if (s == "reev") return PipelineKind::ReEv;
  if (s == "recw") return PipelineKind::ReCW;
  if (s == "two-stage") return PipelineKind::TwoStage;
  throw Error(Errc::InvalidConfig, "unknown pipeline '" + s + "'");
}

std::string scheme_truth_label(PipelineKind kind, const WindowMeta& meta) {
  switch (kind) {
    case PipelineKind::ReEv: return label_reev(meta.exercise, meta.performance);
    case PipelineKind::ReCW: return label_recw(meta.exercise, meta.performance);
    case PipelineKind::TwoStage: return label_stage1(meta.exercise);
  }
  return "?";
}

std::string joint_truth_label(const WindowMeta& meta) {
  return label_reev(meta.exercise, meta.performance);
}

std::string joint_decision_label(const Decision& decision) {
  if (!decision.exercise)
    throw Error(Errc::SchemeMismatch, "decision carries no exercise identity");
  const Performance perf =
      decision.performance == Decision::Perf::W ? Performance::Wrong : Performance::Correct;
  return label_reev(*decision.exercise, perf);
}

namespace {

struct LabeledArrays {
  std::vector<double> x;  // standardized, row-major
  std::vector<std::string> y;
};

LabeledArrays assemble(const WindowSet& windows, const std::vector<std::size_t>& rows,
                       const Standardizer* standardizer, PipelineKind kind) {
  LabeledArrays out;
  out.x.reserve(rows.size() * windows.dim);
  out.y.reserve(rows.size());
  for (std::size_t r : rows) {
    const auto row = windows.row(r);
    out.x.insert(out.x.end(), row.begin(), row.end());
    out.y.push_back(scheme_truth_label(kind, windows.meta[r]));
  }
  if (standardizer) apply_standardizer(*standardizer, out.x, rows.size());
  return out;
}

Standardizer identity_standardizer(std::size_t dim) {
  Standardizer s;
  s.means.assign(dim, 0.0);
  s.stds.assign(dim, 1.0);
  return s;
}

}  // namespace

std::map<ExerciseKind, std::size_t> select_stage2_algos(
    std::size_t n_candidates,
    const std::map<ExerciseKind, std::vector<CandidateMetrics>>& validation_results) {
  if (n_candidates == 0) throw Error(Errc::EmptyGrid, "no stage-2 candidates");
  std::map<ExerciseKind, std::size_t> choice;
  for (ExerciseKind ex : all_exercises()) {
    if (ex == ExerciseKind::GHT) continue;
    const auto it = validation_results.find(ex);
    if (it == validation_results.end() || it->second.size() != n_candidates)
      throw Error(Errc::IncompleteResults,
                  "validation results incomplete for " + to_string(ex));
    std::size_t best = 0;
    for (std::size_t c = 1; c < n_candidates; ++c) {
      const auto& cand = it->second[c];
      const auto& cur = it->second[best];
      if (cand.accuracy > cur.accuracy ||
          (cand.accuracy == cur.accuracy && cand.f1 > cur.f1))
        best = c;
    }
    choice[ex] = best;
  }
  return choice;
}

PipelineModel fit_pipeline(const PipelineConfig& config, const WindowSet& windows,
                           const std::vector<std::size_t>& train_rows,
                           const std::vector<std::size_t>& validation_rows, std::uint64_t seed,
                           PipelineFitReport* report) {
  PipelineFitReport local_report;
  if (!report) report = &local_report;
  PipelineModel model;
  model.kind = config.kind;
  model.standardized = config.standardize;

  // Exercises present in the training split. ReC-W and TwoStage need the
  // full taxonomy (sizing rule / 10-class recognizer + 9 evaluators).
  if (config.kind != PipelineKind::ReEv) {
    bool seen[kNumExercises] = {};
    for (std::size_t r : train_rows) seen[static_cast<int>(windows.meta[r].exercise)] = true;
    for (ExerciseKind ex : all_exercises())
      if (!seen[static_cast<int>(ex)])
        throw Error(Errc::MissingExerciseData,
                    to_string(ex) + " absent from the training split");
  }

  // Assemble the primary training rows; ReC-W balances its wrong pools.
  std::vector<std::size_t> primary_rows;
  if (config.kind == PipelineKind::ReCW) {
    std::map<std::string, std::size_t> correct_counts;
    for (ExerciseKind ex : all_exercises()) correct_counts[to_string(ex)] = 0;
    std::vector<WrongCandidate> pool;
    for (std::size_t r : train_rows) {
      const auto& meta = windows.meta[r];
      if (meta.performance == Performance::Correct) {
        ++correct_counts[to_string(meta.exercise)];
        primary_rows.push_back(r);
      } else {
        pool.push_back({r, meta.exercise});
      }
    }
    for (const auto& [name, count] : correct_counts)
      if (count == 0)
        throw Error(Errc::MissingExerciseData, name + " has no correct training windows");
    const WrongPoolTargets targets = size_recw_wrong_pools(correct_counts);
    const WrongPoolSelection sel =
        sample_recw_wrong_pools(pool, targets, derive_seed(seed, 0x7e01));
    primary_rows.insert(primary_rows.end(), sel.selected.begin(), sel.selected.end());
    std::sort(primary_rows.begin(), primary_rows.end());
    report->undersized_wu = sel.undersized_upper;
    report->undersized_wl = sel.undersized_lower;
    report->wu_selected = sel.selected_upper;
    report->wl_selected = sel.selected_lower;
  } else {
    primary_rows = train_rows;
  }
  report->training_rows = primary_rows.size();

  model.standardizer = config.standardize ? fit_standardizer(windows, primary_rows)
                                          : identity_standardizer(windows.dim);
  const Standardizer* std_ptr = config.standardize ? &model.standardizer : nullptr;

  const LabeledArrays train_data = assemble(windows, primary_rows, std_ptr, config.kind);
  const LabeledArrays val_data = assemble(windows, validation_rows, std_ptr, config.kind);

  AlgoConfig algo = config.algo;
  if (config.tune) {
    const auto grid = default_grid(config.algo.kind, config.algo);
    if (grid.size() > 1)
      algo = tune(grid, {train_data.x, windows.dim, &train_data.y},
                  {val_data.x, windows.dim, &val_data.y}, derive_seed(seed, 0x7e02));
  }
  report->chosen_algo = algo;
  model.primary =
      train(algo, train_data.x, windows.dim, train_data.y, derive_seed(seed, 0x7e03));

  if (config.kind == PipelineKind::TwoStage) {
    std::vector<ExerciseKind> stage2_exercises;
    for (ExerciseKind ex : all_exercises())
      if (ex != ExerciseKind::GHT) stage2_exercises.push_back(ex);

    struct Stage2Fit {
      std::unique_ptr<Classifier> model;
      AlgoConfig algo;
    };
    std::vector<Stage2Fit> fits(stage2_exercises.size());

    parallel_for(stage2_exercises.size(), [&](std::size_t e) {
      const ExerciseKind ex = stage2_exercises[e];
      std::vector<std::size_t> ex_train, ex_val;
      for (std::size_t r : train_rows)
        if (windows.meta[r].exercise == ex) ex_train.push_back(r);
      for (std::size_t r : validation_rows)
        if (windows.meta[r].exercise == ex) ex_val.push_back(r);
      if (ex_train.empty())
        throw Error(Errc::MissingExerciseData,
                    to_string(ex) + " has no training windows for its evaluator");

      // Build binary C/W arrays via a throwaway scheme view.
      LabeledArrays t, v;
      t.x.reserve(ex_train.size() * windows.dim);
      for (std::size_t r : ex_train) {
        const auto row = windows.row(r);
        t.x.insert(t.x.end(), row.begin(), row.end());
        t.y.push_back(label_stage2(windows.meta[r].performance));
      }
      if (std_ptr) apply_standardizer(*std_ptr, t.x, ex_train.size());
      for (std::size_t r : ex_val) {
        const auto row = windows.row(r);
        v.x.insert(v.x.end(), row.begin(), row.end());
        v.y.push_back(label_stage2(windows.meta[r].performance));
      }
      if (std_ptr) apply_standardizer(*std_ptr, v.x, ex_val.size());

      const std::uint64_t ex_seed = derive_seed(seed, 0x7e10 + e);
      if (!config.stage2_candidates.empty()) {
        // Evaluate every candidate on this exercise's validation windows.
        std::vector<std::unique_ptr<Classifier>> cand_models;
        std::vector<CandidateMetrics> cand_metrics;
        for (std::size_t c = 0; c < config.stage2_candidates.size(); ++c) {
          auto m = train(config.stage2_candidates[c], t.x, windows.dim, t.y,
                         derive_seed(ex_seed, c));
          double acc = 0.0, f1 = 0.0;
          if (!v.y.empty()) {
            std::vector<std::string> preds;
            for (std::size_t i = 0; i < v.y.size(); ++i)
              preds.push_back(m->predict(
                  std::span<const double>(v.x.data() + i * windows.dim, windows.dim)));
            const FoldResult scored = score_fold(v.y, preds, stage2_classes());
            acc = scored.micro_accuracy;
            double f1_sum = 0.0;
            int f1_n = 0;
            for (const auto& pm : scored.per_class)
              if (pm.f1_defined) {
                f1_sum += pm.f1;
                ++f1_n;
              }
            f1 = f1_n > 0 ? f1_sum / f1_n : 0.0;
          }
          cand_models.push_back(std::move(m));
          cand_metrics.push_back({acc, f1});
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < cand_metrics.size(); ++c)
          if (cand_metrics[c].accuracy > cand_metrics[best].accuracy ||
              (cand_metrics[c].accuracy == cand_metrics[best].accuracy &&
               cand_metrics[c].f1 > cand_metrics[best].f1))
            best = c;
        fits[e].model = std::move(cand_models[best]);
        fits[e].algo = config.stage2_candidates[best];
      } else {
        AlgoConfig ex_algo = algo;
        if (config.tune) {
          const auto grid = default_grid(algo.kind, algo);
          if (grid.size() > 1)
            ex_algo = tune(grid, {t.x, windows.dim, &t.y}, {v.x, windows.dim, &v.y},
                           derive_seed(ex_seed, 0x51));
        }
        fits[e].model = train(ex_algo, t.x, windows.dim, t.y, derive_seed(ex_seed, 0x52));
        fits[e].algo = ex_algo;
      }
    });

    for (std::size_t e = 0; e < stage2_exercises.size(); ++e) {
      report->stage2_algos[stage2_exercises[e]] = fits[e].algo;
      model.evaluators[stage2_exercises[e]] = std::move(fits[e].model);
    }
  }
  return model;
}

std::vector<double> PipelineModel::standardize_row(std::span<const double> raw) const {
  if (!standardized) return std::vector<double>(raw.begin(), raw.end());
  return apply_standardizer(standardizer, raw);
}

std::string PipelineModel::predict_primary_label(std::span<const double> raw) const {
  const auto x = standardize_row(raw);
  return primary->predict(x);
}

Decision PipelineModel::predict(std::span<const double> raw) const {
  const auto x = standardize_row(raw);
  const std::string label = primary->predict(x);
  Decision d;
  d.native_label = label;
  switch (kind) {
    case PipelineKind::ReEv: {
      const auto [ex, perf] = decode_reev(label);
      d.exercise = ex;
      d.performance = perf == Performance::Correct ? Decision::Perf::C : Decision::Perf::W;
      break;
    }
    case PipelineKind::ReCW: {
      if (label == "WU" || label == "WL") {
        d.wrong_limb = label == "WU" ? LimbGroup::Upper : LimbGroup::Lower;
        d.performance = Decision::Perf::W;
      } else {
        d.exercise = exercise_from_string(label);
        d.performance = Decision::Perf::C;
      }
      break;
    }
    case PipelineKind::TwoStage: {
      const ExerciseKind ex = exercise_from_string(label);
      d.exercise = ex;
      if (ex == ExerciseKind::GHT) {
        // Recognized heel-tiptoe gait is correct by definition; no stage 2.
        d.performance = Decision::Perf::C;
        d.native_label = "GHT";
        break;
      }
      const auto it = evaluators.find(ex);
      if (it == evaluators.end()) {
        d.performance = Decision::Perf::Unknown;
        break;
      }
      const std::string verdict = it->second->predict(x);
      d.performance = verdict == "C" ? Decision::Perf::C : Decision::Perf::W;
      d.native_label = joint_decision_label(d);
      break;
    }
  }
  return d;
}

void PipelineModel::save(std::ostream& out) const {
  out << "exeval-pipeline 1\n";
  out << "kind " << to_string(kind) << "\n";
  out << "standardize " << (standardized ? 1 : 0) << "\n";
  out << "dim " << standardizer.means.size() << "\n";
  const auto write_doubles = [&](const char* key, const std::vector<double>& v) {
    out << key << ' ' << v.size();
    for (double d : v) out << ' ' << detail::format_double(d);
    out << "\n";
  };
  write_doubles("means", standardizer.means);
  write_doubles("stds", standardizer.stds);
  primary->save(out);
  out << "evaluators " << evaluators.size() << "\n";
  for (const auto& [ex, model] : evaluators) {
    out << "exercise " << to_string(ex) << "\n";
    model->save(out);
  }
}

PipelineModel PipelineModel::load(std::istream& in) {
  PipelineModel model;
  std::string line;
  if (!std::getline(in, line) || line != "exeval-pipeline 1")
    throw Error(Errc::Parse, "bad pipeline header");
  const auto field = [&](const char* key) {
    if (!std::getline(in, line) || line.rfind(std::string(key) + " ", 0) != 0)
      throw Error(Errc::Parse, std::string("expected pipeline key ") + key);
    return line.substr(std::string(key).size() + 1);
  };
  model.kind = pipeline_from_string(field("kind"));
  model.standardized = field("standardize") == "1";
  const std::size_t dim = std::stoull(field("dim"));
  const auto read_doubles = [&](const char* key) {
    const std::string rest = field(key);
    char* end = nullptr;
    const std::size_t n = std::strtoull(rest.c_str(), &end, 10);
    std::vector<double> v(n);
    const char* p = end;
    for (auto& d : v) {
      d = std::strtod(p, &end);
      p = end;
    }
    return v;
  };
  model.standardizer.means = read_doubles("means");
  model.standardizer.stds = read_doubles("stds");
  if (model.standardizer.means.size() != dim || model.standardizer.stds.size() != dim)
    throw Error(Errc::Parse, "pipeline standardizer size mismatch");
  model.primary = load_model(in);
  const std::size_t n_eval = std::stoull(field("evaluators"));
  for (std::size_t e = 0; e < n_eval; ++e) {
    const ExerciseKind ex = exercise_from_string(field("exercise"));
    model.evaluators[ex] = load_model(in);
  }
  return model;
}

void PipelineModel::save_file(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw Error(Errc::Io, "cannot write " + file.string());
  save(out);
}

PipelineModel PipelineModel::load_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::Io, "cannot open " + file.string());
  return load(in);
}

}  // namespace exeval
