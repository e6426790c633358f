#include "exeval/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "exeval/dataset.hpp"
#include "exeval/error.hpp"
#include "exeval/features.hpp"
#include "exeval/parallel.hpp"
#include "exeval/report.hpp"
#include "exeval/runner.hpp"

#include "CLI11.hpp"

namespace fs = std::filesystem;

namespace exeval {

namespace {

struct CommonOptions {
  std::string data;
  std::string adapter = "canonical";
  std::string out = "out";
  std::uint64_t seed = 0;
  int jobs = 0;
  bool no_standardize = false;
  bool tune = false;
};

std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Feature tables are cached on disk keyed by (dataset hash, window size) so
// full-grid comparisons stay tractable.
WindowSet cached_featurize(const std::vector<SessionRecording>& recs, int window,
                           const fs::path& cache_dir, const std::string& hash) {
  const WindowSpec spec = make_window_spec(window);
  const fs::path cache_file =
      cache_dir / ("features_" + hash + "_w" + std::to_string(window) + ".csv");
  if (fs::exists(cache_file)) {
    WindowSet set = read_feature_dump(cache_file);
    // Re-count the dropped series; the dump format does not carry them.
    std::size_t dropped = 0;
    for (const auto& rec : recs)
      for (const auto& series : rec.series)
        if (segment_count(series.end_sample - series.start_sample, spec) == 0) ++dropped;
    set.dropped_short_series = dropped;
    return set;
  }
  WindowSet set = featurize(recs, spec);
  fs::create_directories(cache_dir);
  write_feature_dump(cache_file, set);
  return set;
}

AlgoConfig make_algo_config(const std::string& name) {
  AlgoConfig cfg;
  cfg.kind = algo_from_string(name);
  return cfg;
}

RunInfo base_info(const CommonOptions& common) {
  RunInfo info;
  info.push_back({"dataset", common.data});
  info.push_back({"adapter", common.adapter});
  info.push_back({"seed", std::to_string(common.seed)});
  info.push_back({"standardize", common.no_standardize ? "0" : "1"});
  info.push_back({"tune", common.tune ? "1" : "0"});
  return info;
}

int run_synth(const std::string& config_file, const CommonOptions& common) {
  const SynthConfig cfg = load_synth_config(config_file);
  const auto recs = synth_generate(cfg, common.seed);
  write_canonical(common.out, recs);
  std::size_t series = 0;
  for (const auto& rec : recs) series += rec.series.size();
  std::cout << "wrote " << recs.size() << " volunteers, " << series << " series under "
            << common.out << "\n";
  return 0;
}

int run_featurize(const CommonOptions& common, const std::vector<int>& windows) {
  const auto recs = load_dataset(common.data, adapter_from_string(common.adapter));
  const std::string hash = hash_hex(dataset_hash(common.data));
  fs::create_directories(common.out);
  std::ofstream summary(fs::path(common.out) / "featurize_summary.txt");
  if (!summary) throw Error(Errc::Io, "cannot write featurize summary");
  summary << "dataset_hash: " << hash << "\n";
  for (int w : windows) {
    const WindowSpec spec = make_window_spec(w);
    const WindowSet set = featurize(recs, spec);
    const fs::path dump = fs::path(common.out) / ("features_w" + std::to_string(w) + ".csv");
    write_feature_dump(dump, set);
    summary << "window_" << w << ":\n";
    summary << "  rows: " << set.size() << "\n";
    summary << "  dropped_short_series: " << set.dropped_short_series << "\n";
    std::map<std::string, std::map<std::string, std::size_t>> counts;
    for (const auto& m : set.meta)
      ++counts[m.volunteer_id][label_reev(m.exercise, m.performance)];
    for (const auto& [vid, by_class] : counts) {
      summary << "  " << vid << ":";
      for (const auto& [cls, n] : by_class) summary << " " << cls << "=" << n;
      summary << "\n";
    }
    std::cout << "wrote " << dump.string() << " (" << set.size() << " windows)\n";
  }
  return 0;
}

RunInfo loso_info(const CommonOptions& common, const std::string& pipeline,
                  const AlgoConfig& algo, int window) {
  RunInfo info = base_info(common);
  info.push_back({"pipeline", pipeline});
  info.push_back({"algo", algo.describe()});
  info.push_back({"window", std::to_string(window)});
  return info;
}

int run_loso_cmd(const CommonOptions& common, int window, const std::string& pipeline_name,
                 const std::string& algo_name, const std::vector<std::string>& stage2_names) {
  const auto recs = load_dataset(common.data, adapter_from_string(common.adapter));
  const std::string hash = hash_hex(dataset_hash(common.data));
  const WindowSet set =
      cached_featurize(recs, window, fs::path(common.out) / "cache", hash);

  LosoRunConfig run;
  run.seed = common.seed;
  run.pipeline.kind = pipeline_from_string(pipeline_name);
  run.pipeline.algo = make_algo_config(algo_name);
  for (const auto& name : stage2_names)
    run.pipeline.stage2_candidates.push_back(make_algo_config(name));
  run.pipeline.standardize = !common.no_standardize;
  run.pipeline.tune = common.tune;

  const LosoOutcome outcome = run_loso(set, run);
  const RunInfo info = loso_info(common, pipeline_name, run.pipeline.algo, window);
  const auto written = write_loso_report(common.out, info, outcome);
  write_manifest(fs::path(common.out) / "manifest.json", info, hash);
  std::cout << "folds: " << outcome.plan.folds.size()
            << "  headline acc: " << format_percent(outcome.primary.aggregate.headline.acc)
            << (outcome.end_to_end.folds.empty()
                    ? std::string()
                    : "  end-to-end acc: " +
                          format_percent(outcome.end_to_end.aggregate.headline.acc))
            << "\n";
  for (const auto& file : written) std::cout << "wrote " << file.string() << "\n";
  return 0;
}

int run_compare(const CommonOptions& common, const std::vector<int>& windows,
                const std::vector<std::string>& pipelines,
                const std::vector<std::string>& algos) {
  const auto recs = load_dataset(common.data, adapter_from_string(common.adapter));
  const std::string hash = hash_hex(dataset_hash(common.data));

  std::vector<ComparisonRow> rows;
  for (const auto& pipeline_name : pipelines) {
    for (const auto& algo_name : algos) {
      for (int window : windows) {
        const WindowSet set =
            cached_featurize(recs, window, fs::path(common.out) / "cache", hash);
        LosoRunConfig run;
        run.seed = common.seed;
        run.pipeline.kind = pipeline_from_string(pipeline_name);
        run.pipeline.algo = make_algo_config(algo_name);
        run.pipeline.standardize = !common.no_standardize;
        run.pipeline.tune = common.tune;
        const LosoOutcome outcome = run_loso(set, run);
        ComparisonRow row;
        row.pipeline = pipeline_name;
        row.algo = algo_name;
        row.window = window;
        row.headline = outcome.primary.aggregate.headline;
        for (const auto& [ex, rep] : outcome.stage2)
          row.stage2.push_back({to_string(ex),
                                {rep.aggregate.headline.acc, rep.aggregate.headline.f1}});
        rows.push_back(std::move(row));
        std::cout << pipeline_name << " " << algo_name << " w" << window << ": acc "
                  << format_percent(row.headline.acc) << "\n";
      }
    }
  }
  RunInfo info = base_info(common);
  info.push_back({"windows", std::to_string(windows.size())});
  write_comparison(common.out, info, rows);
  write_manifest(fs::path(common.out) / "manifest.json", info, hash);
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"exercise recognition and evaluation from four body-worn IMUs"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOptions common;
  std::vector<int> windows;
  std::string pipeline_name = "reev";
  std::string algo_name = "svm-l";
  std::vector<std::string> pipeline_names;
  std::vector<std::string> algo_names;
  std::vector<std::string> stage2_names;
  std::string synth_config_file;

  const auto add_common = [&](CLI::App* cmd, bool needs_data) {
    if (needs_data)
      cmd->add_option("--data", common.data, "dataset root directory")->required();
    cmd->add_option("--adapter", common.adapter, "dataset layout adapter")
        ->check(CLI::IsMember({"canonical", "zenodo"}));
    cmd->add_option("--out", common.out, "output directory");
    cmd->add_option("--seed", common.seed, "master random seed");
    cmd->add_option("--jobs", common.jobs, "max worker threads (0 = hardware default)");
  };

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset on disk");
  synth->add_option("--synth-config", synth_config_file, "synthetic generator config file")
      ->required();
  add_common(synth, false);

  CLI::App* featurize_cmd =
      app.add_subcommand("featurize", "extract windowed feature dumps from a dataset");
  add_common(featurize_cmd, true);
  featurize_cmd->add_option("--window", windows, "window sizes in samples")
      ->check(CLI::IsMember({100, 200, 300}));

  CLI::App* loso = app.add_subcommand("loso", "run leave-one-subject-out evaluation");
  add_common(loso, true);
  int loso_window = 300;
  loso->add_option("--window", loso_window, "window size in samples")
      ->check(CLI::IsMember({100, 200, 300}));
  loso->add_option("--pipeline", pipeline_name, "classification architecture")
      ->check(CLI::IsMember({"reev", "recw", "two-stage"}));
  loso->add_option("--algo", algo_name, "classifier family")
      ->check(CLI::IsMember({"svm-l", "svm-p", "svm-g", "dt", "rf", "knn", "elm", "mlp"}));
  loso->add_option("--stage2-algo", stage2_names,
                   "candidate evaluator algorithms (two-stage), best per exercise");
  loso->add_flag("--no-standardize", common.no_standardize,
                 "train on raw features (strict-paper mode)");
  loso->add_flag("--tune", common.tune, "grid-search family hyperparameters on validation");

  CLI::App* compare = app.add_subcommand("compare", "comparison table across configurations");
  add_common(compare, true);
  compare->add_option("--window", windows, "window sizes in samples")
      ->check(CLI::IsMember({100, 200, 300}));
  compare->add_option("--pipeline", pipeline_names, "architectures to include");
  compare->add_option("--algo", algo_names, "classifier families to include");
  compare->add_flag("--no-standardize", common.no_standardize,
                    "train on raw features (strict-paper mode)");
  compare->add_flag("--tune", common.tune, "grid-search family hyperparameters on validation");

  std::vector<const char*> argv;
  argv.push_back("exeval");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    set_max_threads(common.jobs);
    if (synth->parsed()) return run_synth(synth_config_file, common);
    if (featurize_cmd->parsed()) {
      if (windows.empty()) windows = {100, 200, 300};
      return run_featurize(common, windows);
    }
    if (loso->parsed())
      return run_loso_cmd(common, loso_window, pipeline_name, algo_name, stage2_names);
    if (compare->parsed()) {
      if (windows.empty()) windows = {100, 200, 300};
      if (pipeline_names.empty()) pipeline_names = {"reev", "recw", "two-stage"};
      if (algo_names.empty()) algo_names = {"svm-l"};
      for (const auto& p : pipeline_names) pipeline_from_string(p);
      for (const auto& a : algo_names) algo_from_string(a);
      return run_compare(common, windows, pipeline_names, algo_names);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace exeval
