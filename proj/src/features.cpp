#include "exeval/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>

#include "exeval/dataset.hpp"
#include "exeval/error.hpp"
#include "exeval/parallel.hpp"

namespace exeval {

WindowSpec make_window_spec(int size_samples) {
  if (size_samples != 100 && size_samples != 200 && size_samples != 300)
    throw Error(Errc::InvalidConfig, "window size must be 100, 200 or 300 samples");
  return WindowSpec{size_samples, 0.5};
}

std::vector<std::size_t> segment(std::size_t series_length, const WindowSpec& spec) {
  std::vector<std::size_t> starts;
  const std::size_t size = static_cast<std::size_t>(spec.size_samples);
  const std::size_t step = static_cast<std::size_t>(spec.step());
  if (series_length < size) return starts;
  for (std::size_t start = 0; start + size <= series_length; start += step)
    starts.push_back(start);
  return starts;
}

std::size_t segment_count(std::size_t series_length, const WindowSpec& spec) {
  const std::size_t size = static_cast<std::size_t>(spec.size_samples);
  if (series_length < size) return 0;
  return (series_length - size) / static_cast<std::size_t>(spec.step()) + 1;
}

namespace {

// Stats for one signal over [begin, begin+w): mean, population std, max, min.
inline void signal_stats(const double* begin, std::size_t w, double* out) {
  double sum = 0.0;
  double mx = begin[0];
  double mn = begin[0];
  for (std::size_t i = 0; i < w; ++i) {
    const double v = begin[i];
    sum += v;
    if (v > mx) mx = v;
    if (v < mn) mn = v;
  }
  const double mean = sum / static_cast<double>(w);
  double ss = 0.0;
  for (std::size_t i = 0; i < w; ++i) {
    const double d = begin[i] - mean;
    ss += d * d;
  }
  out[0] = mean;
  out[1] = std::sqrt(ss / static_cast<double>(w));
  out[2] = mx;
  out[3] = mn;
}

}  // namespace

std::vector<double> extract_features(const std::vector<std::vector<double>>& segments) {
  if (segments.size() != static_cast<std::size_t>(kNumSignals))
    throw Error(Errc::LengthMismatch, "expected 24 signal segments");
  const std::size_t w = segments[0].size();
  if (w < 2) throw Error(Errc::LengthMismatch, "window must hold at least 2 samples");
  for (const auto& s : segments)
    if (s.size() != w) throw Error(Errc::LengthMismatch, "segments differ in length");
  std::vector<double> out(kNumFeatures);
  for (int s = 0; s < kNumSignals; ++s)
    signal_stats(segments[s].data(), w, out.data() + s * kStatsPerSignal);
  return out;
}

std::vector<double> extract_features_reference(const std::vector<std::vector<double>>& segments) {
  if (segments.size() != static_cast<std::size_t>(kNumSignals))
    throw Error(Errc::LengthMismatch, "expected 24 signal segments");
  const std::size_t w = segments[0].size();
  if (w < 2) throw Error(Errc::LengthMismatch, "window must hold at least 2 samples");
  std::vector<double> out;
  out.reserve(kNumFeatures);
  for (const auto& s : segments) {
    if (s.size() != w) throw Error(Errc::LengthMismatch, "segments differ in length");
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(w);
    double ss = 0.0;
    for (double v : s) ss += (v - mean) * (v - mean);
    const auto [mn, mx] = std::minmax_element(s.begin(), s.end());
    out.push_back(mean);
    out.push_back(std::sqrt(ss / static_cast<double>(w)));
    out.push_back(*mx);
    out.push_back(*mn);
  }
  return out;
}

namespace {

struct SeriesTask {
  const SessionRecording* rec;
  const ExerciseSeries* series;
  int series_ordinal;
  std::size_t first_row;  // offset into the output set
  std::size_t n_windows;
};

template <typename ForLoop>
WindowSet featurize_impl(const std::vector<SessionRecording>& recordings, const WindowSpec& spec,
                         ForLoop&& loop) {
  WindowSet set;
  std::vector<SeriesTask> tasks;
  std::size_t total = 0;
  for (const auto& rec : recordings) {
    for (std::size_t si = 0; si < rec.series.size(); ++si) {
      const auto& series = rec.series[si];
      const std::size_t len = series.end_sample - series.start_sample;
      const std::size_t n = segment_count(len, spec);
      if (n == 0) {
        ++set.dropped_short_series;
        continue;
      }
      tasks.push_back({&rec, &series, static_cast<int>(si), total, n});
      total += n;
    }
  }
  set.features.resize(total * kNumFeatures);
  set.meta.resize(total);
  const std::size_t w = static_cast<std::size_t>(spec.size_samples);
  const std::size_t step = static_cast<std::size_t>(spec.step());
  loop(tasks.size(), [&](std::size_t ti) {
    const SeriesTask& task = tasks[ti];
    const auto signals = slice_series(*task.rec, *task.series);
    for (std::size_t wi = 0; wi < task.n_windows; ++wi) {
      const std::size_t start = wi * step;
      const std::size_t row = task.first_row + wi;
      double* out = set.features.data() + row * kNumFeatures;
      for (int s = 0; s < kNumSignals; ++s)
        signal_stats(signals[s].data() + start, w, out + s * kStatsPerSignal);
      set.meta[row] = WindowMeta{task.rec->volunteer_id, task.series->exercise,
                                 task.series->performance, task.series_ordinal, start};
    }
  });
  return set;
}

}  // namespace

WindowSet featurize(const std::vector<SessionRecording>& recordings, const WindowSpec& spec) {
  return featurize_impl(recordings, spec,
                        [](std::size_t n, auto&& fn) { parallel_for(n, fn); });
}

WindowSet featurize_serial(const std::vector<SessionRecording>& recordings,
                           const WindowSpec& spec) {
  return featurize_impl(recordings, spec,
                        [](std::size_t n, auto&& fn) { serial_for(n, fn); });
}

Standardizer fit_standardizer(std::span<const double> x, std::size_t n, std::size_t dim) {
  if (n < 2) throw Error(Errc::InsufficientData, "standardizer needs at least 2 vectors");
  if (x.size() != n * dim) throw Error(Errc::DimensionMismatch, "flat feature size");
  Standardizer s;
  s.means.assign(dim, 0.0);
  s.stds.assign(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dim; ++j) s.means[j] += x[i * dim + j];
  for (std::size_t j = 0; j < dim; ++j) s.means[j] /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = x[i * dim + j] - s.means[j];
      s.stds[j] += d * d;
    }
  for (std::size_t j = 0; j < dim; ++j) {
    s.stds[j] = std::sqrt(s.stds[j] / static_cast<double>(n));
    if (s.stds[j] < 1e-12) s.stds[j] = 1.0;  // degenerate column
  }
  return s;
}

Standardizer fit_standardizer(const WindowSet& set, const std::vector<std::size_t>& rows) {
  std::vector<double> flat;
  flat.reserve(rows.size() * set.dim);
  for (std::size_t r : rows) {
    const auto row = set.row(r);
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return fit_standardizer(flat, rows.size(), set.dim);
}

void apply_standardizer(const Standardizer& s, std::span<double> x, std::size_t n) {
  const std::size_t dim = s.means.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      double& v = x[i * dim + j];
      v = (v - s.means[j]) / s.stds[j];
    }
}

std::vector<double> apply_standardizer(const Standardizer& s, std::span<const double> row) {
  std::vector<double> out(row.begin(), row.end());
  apply_standardizer(s, out, 1);
  return out;
}

std::vector<double> invert_standardizer(const Standardizer& s, std::span<const double> row) {
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = row[j] * s.stds[j] + s.means[j];
  return out;
}

void write_feature_dump(const std::filesystem::path& file, const WindowSet& set) {
  std::ofstream out(file);
  if (!out) throw Error(Errc::Io, "cannot open " + file.string());
  out << "volunteer_id,exercise,performance,window_start";
  for (int j = 0; j < kNumFeatures; ++j) out << ",f" << j;
  out << "\n";
  char buf[32];
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& m = set.meta[i];
    out << m.volunteer_id << ',' << to_string(m.exercise) << ',' << to_char(m.performance) << ','
        << m.window_start;
    const auto row = set.row(i);
    for (double v : row) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << "\n";
  }
  if (!out) throw Error(Errc::Io, "write failed for " + file.string());
}

WindowSet read_feature_dump(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::Io, "cannot open " + file.string());
  WindowSet set;
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::Parse, "empty feature dump");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t next = line.find(',', pos);
      if (next == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, next - pos));
      pos = next + 1;
    }
    if (fields.size() != 4 + kNumFeatures)
      throw Error(Errc::Parse, "feature dump row has wrong column count");
    WindowMeta m;
    m.volunteer_id = fields[0];
    m.exercise = exercise_from_string(fields[1]);
    m.performance = performance_from_char(fields[2].empty() ? '?' : fields[2][0]);
    m.series_ordinal = -1;  // series identity is not part of the dump format
    m.window_start = std::stoull(fields[3]);
    set.meta.push_back(std::move(m));
    for (int j = 0; j < kNumFeatures; ++j)
      set.features.push_back(std::strtod(fields[4 + j].c_str(), nullptr));
  }
  return set;
}

}  // namespace exeval
