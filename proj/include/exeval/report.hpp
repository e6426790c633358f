#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "exeval/runner.hpp"

namespace exeval {

// Ordered key/value pairs describing the run; written verbatim into the
// report header and the manifest.
using RunInfo = std::vector<std::pair<std::string, std::string>>;

// Integer-count confusion matrix as delimited text with label headers.
void write_confusion_csv(const std::filesystem::path& file, const ConfusionMatrix& m);

// Per-fold mean of a summed confusion matrix (the figure-style view).
void write_confusion_mean_csv(const std::filesystem::path& file, const ConfusionMatrix& summed,
                              std::size_t n_folds);

// Nested key-value run report plus confusion exports under dir. Returns the
// paths written. Output bytes depend only on (outcome, info).
std::vector<std::filesystem::path> write_loso_report(const std::filesystem::path& dir,
                                                     const RunInfo& info,
                                                     const LosoOutcome& outcome);

// Machine-readable run manifest (config, dataset hash, versions); wall-clock
// metadata is confined to the "meta" block so everything else is
// reproducible byte for byte.
void write_manifest(const std::filesystem::path& file, const RunInfo& info,
                    const std::string& dataset_hash_hex);

struct ComparisonRow {
  std::string pipeline;
  std::string algo;
  int window = 0;
  MetricSummary headline;
  // TwoStage per-exercise evaluation block (acc, f1), keyed by exercise code.
  std::vector<std::pair<std::string, std::pair<double, double>>> stage2;
};

void write_comparison(const std::filesystem::path& dir, const RunInfo& info,
                      const std::vector<ComparisonRow>& rows);

std::string format_percent(double value);

}  // namespace exeval
