#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "exeval/types.hpp"

namespace exeval {

struct WindowSpec {
  int size_samples = 300;          // 100, 200 or 300
  double overlap_fraction = 0.5;   // fixed
  int step() const { return size_samples / 2; }
};

// Validates size against the supported set {100, 200, 300}.
WindowSpec make_window_spec(int size_samples);

// Window start offsets into a series of the given length: 0, step, 2*step, ...
// while start + size <= length. Empty when the series is shorter than the
// window; windows never cross series boundaries.
std::vector<std::size_t> segment(std::size_t series_length, const WindowSpec& spec);

// Count given by the closed form floor((L - W) / (W/2)) + 1 for L >= W.
std::size_t segment_count(std::size_t series_length, const WindowSpec& spec);

// 96 statistics for one window: per signal (imu-major, gx gy gz ax ay az)
// the sample mean, population standard deviation, maximum and minimum, in
// that order. All 24 segments must share the same length W >= 2.
std::vector<double> extract_features(const std::vector<std::vector<double>>& segments);

// Straight-line reference implementation kept for the kernel tests.
std::vector<double> extract_features_reference(const std::vector<std::vector<double>>& segments);

struct WindowMeta {
  std::string volunteer_id;
  ExerciseKind exercise = ExerciseKind::EAH;
  Performance performance = Performance::Correct;
  int series_ordinal = 0;          // index of the source series in the recording
  std::size_t window_start = 0;    // offset within the series
};

// Feature rows for every window of a dataset, stored row-major.
struct WindowSet {
  std::size_t dim = kNumFeatures;
  std::vector<double> features;
  std::vector<WindowMeta> meta;
  std::size_t dropped_short_series = 0;

  std::size_t size() const { return meta.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(features.data() + i * dim, dim);
  }
  std::span<double> row(std::size_t i) {
    return std::span<double>(features.data() + i * dim, dim);
  }
};

// Windows and features for all labeled series of all recordings. Series
// shorter than the window are dropped and counted. The OpenMP kernel and the
// serial reference produce identical bytes.
WindowSet featurize(const std::vector<SessionRecording>& recordings, const WindowSpec& spec);
WindowSet featurize_serial(const std::vector<SessionRecording>& recordings, const WindowSpec& spec);

struct Standardizer {
  std::vector<double> means;
  std::vector<double> stds;  // degenerate columns are forced to 1
};

// Per-column mean and population std over the given rows (flat row-major).
// Columns with std below 1e-12 get std 1.
Standardizer fit_standardizer(std::span<const double> x, std::size_t n, std::size_t dim);
Standardizer fit_standardizer(const WindowSet& set, const std::vector<std::size_t>& rows);

void apply_standardizer(const Standardizer& s, std::span<double> x, std::size_t n);
std::vector<double> apply_standardizer(const Standardizer& s, std::span<const double> row);
std::vector<double> invert_standardizer(const Standardizer& s, std::span<const double> row);

// Delimited feature dump: header row, then one row per window with
// volunteer_id, exercise, performance, window_start, f0..f95 at 17
// significant digits (bit-exact round trip).
void write_feature_dump(const std::filesystem::path& file, const WindowSet& set);
WindowSet read_feature_dump(const std::filesystem::path& file);

}  // namespace exeval
