#include "exeval/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "exeval/error.hpp"
#include "exeval/labels.hpp"
#include "exeval/rng.hpp"

namespace fs = std::filesystem;

namespace exeval {

DatasetAdapter adapter_from_string(const std::string& s) {
  if (s == "canonical") return DatasetAdapter::Canonical;
  if (s == "zenodo") return DatasetAdapter::Zenodo;
  throw Error(Errc::InvalidConfig, "unknown dataset adapter '" + s + "'");
}

std::string to_string(DatasetAdapter a) {
  return a == DatasetAdapter::Canonical ? "canonical" : "zenodo";
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

double parse_double(const std::string& s, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || trim(std::string(end)) != "")
    throw Error(Errc::Parse, "bad number '" + s + "' in " + context);
  return v;
}

long long parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(trim(s), &used);
    if (used != trim(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::Parse, "bad integer '" + s + "' in " + context);
  }
}

void check_mean_rate(const SensorStream& stream, const std::string& context) {
  const auto& samples = stream.samples;
  if (samples.size() < 2) return;
  const double span = samples.back().t - samples.front().t;
  if (span <= 0.0) throw Error(Errc::Parse, "non-increasing timestamps in " + context);
  const double rate = static_cast<double>(samples.size() - 1) / span;
  if (std::abs(rate - stream.nominal_rate_hz) > kRateTolerance * stream.nominal_rate_hz)
    throw Error(Errc::RateAnomaly, context + ": observed mean rate " + std::to_string(rate) +
                                       " Hz deviates more than 5% from nominal");
}

SensorStream read_canonical_imu(const fs::path& file, ImuSlot slot) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::Io, "cannot open " + file.string());
  SensorStream stream;
  stream.slot = slot;
  stream.placement = file.stem().string();
  std::string line;
  if (!std::getline(in, line) || trim(lower(line)) != "t,gx,gy,gz,ax,ay,az")
    throw Error(Errc::Parse, file.string() + ": expected header t,gx,gy,gz,ax,ay,az");
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 7) throw Error(Errc::Parse, file.string() + ": row needs 7 columns");
    ImuSample s;
    s.t = parse_double(fields[0], file.string());
    for (int i = 0; i < 3; ++i) s.gyro[i] = parse_double(fields[1 + i], file.string());
    for (int i = 0; i < 3; ++i) s.accel[i] = parse_double(fields[4 + i], file.string());
    stream.samples.push_back(s);
  }
  return stream;
}

std::vector<ExerciseSeries> read_labels_manifest(const fs::path& file,
                                                 const std::string& expect_volunteer) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::Io, "cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line) ||
      trim(lower(line)) != "volunteer_id,exercise,performance,start_sample,end_sample")
    throw Error(Errc::Parse, file.string() + ": bad labels header");
  std::vector<ExerciseSeries> series;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 5) throw Error(Errc::Parse, file.string() + ": row needs 5 columns");
    if (trim(fields[0]) != expect_volunteer)
      throw Error(Errc::Parse, file.string() + ": volunteer_id mismatch '" + fields[0] + "'");
    ExerciseSeries s;
    s.exercise = exercise_from_string(trim(fields[1]));
    s.performance = performance_from_char(trim(fields[2]).empty() ? '?' : trim(fields[2])[0]);
    const long long start = parse_int(fields[3], file.string());
    const long long end = parse_int(fields[4], file.string());
    if (start < 0 || end < 0) throw Error(Errc::Parse, file.string() + ": negative index");
    s.start_sample = static_cast<std::size_t>(start);
    s.end_sample = static_cast<std::size_t>(end);
    series.push_back(s);
  }
  return series;
}

void check_series_bounds(const SessionRecording& rec) {
  std::size_t min_len = rec.streams[0].samples.size();
  for (const auto& st : rec.streams) min_len = std::min(min_len, st.samples.size());
  for (const auto& s : rec.series) {
    if (s.start_sample >= s.end_sample)
      throw Error(Errc::LabelOutOfBounds,
                  rec.volunteer_id + ": series " + to_string(s.exercise) + " has start >= end");
    if (s.end_sample > min_len)
      throw Error(Errc::LabelOutOfBounds,
                  rec.volunteer_id + ": series " + to_string(s.exercise) + " ends at " +
                      std::to_string(s.end_sample) + " past stream length " +
                      std::to_string(min_len));
  }
}

SessionRecording load_canonical_volunteer(const fs::path& dir) {
  SessionRecording rec;
  rec.volunteer_id = dir.filename().string();
  for (int k = 0; k < kNumImus; ++k) {
    const fs::path file = dir / ("imu" + std::to_string(k + 1) + ".csv");
    if (!fs::exists(file))
      throw Error(Errc::MissingStream, rec.volunteer_id + ": missing " + file.filename().string());
    rec.streams[k] = read_canonical_imu(file, static_cast<ImuSlot>(k));
    check_mean_rate(rec.streams[k], file.string());
  }
  const fs::path labels = dir / "labels.csv";
  if (!fs::exists(labels))
    throw Error(Errc::MissingStream, rec.volunteer_id + ": missing labels.csv");
  rec.series = read_labels_manifest(labels, rec.volunteer_id);
  check_series_bounds(rec);
  return rec;
}

// --- zenodo adapter -------------------------------------------------------
//
// Header-name driven column mapping for NGIMU-style sensor CSVs. Extra
// columns (magnetometer, barometer, counters) are ignored.

int find_column(const std::vector<std::string>& headers, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < headers.size(); ++i) {
    const std::string h = trim(lower(headers[i]));
    for (const auto& n : names)
      if (h == n || h.find(n) != std::string::npos) return static_cast<int>(i);
  }
  return -1;
}

SensorStream read_zenodo_imu(const fs::path& file, ImuSlot slot) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::Io, "cannot open " + file.string());
  SensorStream stream;
  stream.slot = slot;
  stream.placement = file.stem().string();
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::Parse, file.string() + ": empty file");
  const auto headers = split(line, ',');
  const int tcol = find_column(headers, {"time (s)", "time(s)", "timestamp", "time", "t"});
  const int cols[6] = {
      find_column(headers, {"gyroscope x", "gyro x", "gx"}),
      find_column(headers, {"gyroscope y", "gyro y", "gy"}),
      find_column(headers, {"gyroscope z", "gyro z", "gz"}),
      find_column(headers, {"accelerometer x", "accel x", "ax"}),
      find_column(headers, {"accelerometer y", "accel y", "ay"}),
      find_column(headers, {"accelerometer z", "accel z", "az"}),
  };
  if (tcol < 0) throw Error(Errc::Parse, file.string() + ": no time column");
  for (int c : cols)
    if (c < 0) throw Error(Errc::Parse, file.string() + ": missing gyro/accel column");
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    ImuSample s;
    const auto cell = [&](int c) -> double {
      if (c >= static_cast<int>(fields.size()))
        throw Error(Errc::Parse, file.string() + ": short row");
      return parse_double(fields[c], file.string());
    };
    s.t = cell(tcol);
    for (int i = 0; i < 3; ++i) s.gyro[i] = cell(cols[i]);
    for (int i = 0; i < 3; ++i) s.accel[i] = cell(cols[3 + i]);
    stream.samples.push_back(s);
  }
  return stream;
}

SessionRecording load_zenodo_volunteer(const fs::path& dir) {
  SessionRecording rec;
  rec.volunteer_id = dir.filename().string();
  std::vector<fs::path> imu_files;
  fs::path labels_file;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lower(entry.path().extension().string());
    if (ext != ".csv") continue;
    const std::string name = lower(entry.path().filename().string());
    if (name.find("label") != std::string::npos)
      labels_file = entry.path();
    else
      imu_files.push_back(entry.path());
  }
  std::sort(imu_files.begin(), imu_files.end());
  if (imu_files.size() != kNumImus)
    throw Error(Errc::MissingStream, rec.volunteer_id + ": found " +
                                         std::to_string(imu_files.size()) +
                                         " IMU files, expected 4");
  for (int k = 0; k < kNumImus; ++k) {
    rec.streams[k] = read_zenodo_imu(imu_files[k], static_cast<ImuSlot>(k));
    check_mean_rate(rec.streams[k], imu_files[k].string());
  }
  if (labels_file.empty())
    throw Error(Errc::MissingStream, rec.volunteer_id + ": no labels manifest");
  rec.series = read_labels_manifest(labels_file, rec.volunteer_id);
  check_series_bounds(rec);
  return rec;
}

}  // namespace

std::vector<SessionRecording> load_dataset(const fs::path& root, DatasetAdapter adapter) {
  if (!fs::exists(root)) throw Error(Errc::Io, "dataset root " + root.string() + " not found");
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw Error(Errc::Io, "no volunteer directories under " + root.string());
  std::vector<SessionRecording> recs;
  recs.reserve(dirs.size());
  for (const auto& dir : dirs)
    recs.push_back(adapter == DatasetAdapter::Canonical ? load_canonical_volunteer(dir)
                                                        : load_zenodo_volunteer(dir));
  return recs;
}

void write_canonical(const fs::path& root, const std::vector<SessionRecording>& recordings) {
  fs::create_directories(root);
  char buf[32];
  for (const auto& rec : recordings) {
    const fs::path dir = root / rec.volunteer_id;
    fs::create_directories(dir);
    for (int k = 0; k < kNumImus; ++k) {
      std::ofstream out(dir / ("imu" + std::to_string(k + 1) + ".csv"));
      if (!out) throw Error(Errc::Io, "cannot write under " + dir.string());
      out << "t,gx,gy,gz,ax,ay,az\n";
      for (const auto& s : rec.streams[k].samples) {
        std::snprintf(buf, sizeof(buf), "%.9f", s.t);
        out << buf;
        for (double v : s.gyro) {
          std::snprintf(buf, sizeof(buf), "%.17g", v);
          out << ',' << buf;
        }
        for (double v : s.accel) {
          std::snprintf(buf, sizeof(buf), "%.17g", v);
          out << ',' << buf;
        }
        out << "\n";
      }
    }
    std::ofstream out(dir / "labels.csv");
    if (!out) throw Error(Errc::Io, "cannot write under " + dir.string());
    out << "volunteer_id,exercise,performance,start_sample,end_sample\n";
    for (const auto& s : rec.series)
      out << rec.volunteer_id << ',' << to_string(s.exercise) << ',' << to_char(s.performance)
          << ',' << s.start_sample << ',' << s.end_sample << "\n";
  }
}

std::vector<Violation> validate_recording(const SessionRecording& rec) {
  std::vector<Violation> report;
  const auto add = [&](const std::string& what) { report.push_back({rec.volunteer_id + ": " + what}); };

  std::size_t min_len = rec.streams[0].samples.size();
  for (int k = 0; k < kNumImus; ++k) {
    const auto& st = rec.streams[k];
    const std::string tag = "imu" + std::to_string(k + 1);
    min_len = std::min(min_len, st.samples.size());
    if (st.samples.empty()) {
      add(tag + " has no samples");
      continue;
    }
    if (st.samples.front().t < 0.0) add(tag + " starts at negative time");
    for (std::size_t i = 1; i < st.samples.size(); ++i)
      if (st.samples[i].t <= st.samples[i - 1].t) {
        add(tag + " timestamps not strictly increasing at sample " + std::to_string(i));
        break;
      }
    for (std::size_t i = 0; i < st.samples.size(); ++i) {
      const auto& s = st.samples[i];
      bool gyro_ok = true, accel_ok = true;
      for (double v : s.gyro) gyro_ok = gyro_ok && std::abs(v) <= kGyroRangeDps;
      for (double v : s.accel) accel_ok = accel_ok && std::abs(v) <= kAccelRangeG;
      if (!gyro_ok) {
        add(tag + " gyro sample " + std::to_string(i) + " outside +/-2000 deg/s");
        break;
      }
      if (!accel_ok) {
        add(tag + " accel sample " + std::to_string(i) + " outside +/-16 g");
        break;
      }
    }
    if (st.samples.size() >= 2) {
      const double span = st.samples.back().t - st.samples.front().t;
      if (span > 0.0) {
        const double rate = static_cast<double>(st.samples.size() - 1) / span;
        if (std::abs(rate - st.nominal_rate_hz) > kRateTolerance * st.nominal_rate_hz)
          add(tag + " mean rate " + std::to_string(rate) + " Hz deviates more than 5% from " +
              std::to_string(st.nominal_rate_hz));
      }
    }
  }

  for (std::size_t i = 0; i < rec.series.size(); ++i) {
    const auto& s = rec.series[i];
    const std::string tag = "series " + std::to_string(i) + " (" + to_string(s.exercise) + "-" +
                            to_char(s.performance) + ")";
    if (s.start_sample >= s.end_sample) add(tag + " has start >= end");
    if (s.end_sample > min_len) add(tag + " extends past stream length");
    if (s.exercise == ExerciseKind::GHT && s.performance == Performance::Wrong)
      add(tag + " marks GHT as wrong (wrong heel-tiptoe gait is labeled GAT-W)");
    if (s.repetitions) {
      const int lo = s.exercise == ExerciseKind::SQT ? 7 : 10;
      const int hi = s.exercise == ExerciseKind::SQT ? 15 : 20;
      if (*s.repetitions < lo || *s.repetitions > hi)
        add(tag + " repetition count " + std::to_string(*s.repetitions) + " outside " +
            std::to_string(lo) + ".." + std::to_string(hi));
    }
  }
  // Overlap check over series sorted by start.
  std::vector<std::size_t> order(rec.series.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rec.series[a].start_sample < rec.series[b].start_sample;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto& prev = rec.series[order[k - 1]];
    const auto& cur = rec.series[order[k]];
    if (cur.start_sample < prev.end_sample)
      add("series " + std::to_string(order[k - 1]) + " (" + to_string(prev.exercise) + "-" +
          to_char(prev.performance) + ") overlaps series " + std::to_string(order[k]) + " (" +
          to_string(cur.exercise) + "-" + to_char(cur.performance) + ")");
  }
  return report;
}

ClassSignature default_signature(int class_index) {
  // Slow frequency ramp keeps even the highest class index above 30 samples
  // per repetition, so paper-scale rep counts clear all three window sizes.
  ClassSignature sig;
  sig.freq_hz = 0.4 + 0.15 * class_index;
  sig.amp_gyro_dps = 20.0 + 7.0 * class_index;
  sig.amp_accel_g = 0.3 + 0.08 * class_index;
  return sig;
}

namespace {

struct SynthClass {
  ExerciseKind exercise;
  Performance performance;
  std::string name;
  ClassSignature sig;
};

std::vector<SynthClass> synth_classes(const SynthConfig& cfg) {
  std::vector<ExerciseKind> exercises = cfg.exercises;
  if (exercises.empty())
    exercises.assign(all_exercises().begin(), all_exercises().end());
  std::vector<SynthClass> classes;
  for (ExerciseKind ex : exercises) {
    classes.push_back({ex, Performance::Correct, label_reev(ex, Performance::Correct), {}});
    if (cfg.include_wrong && ex != ExerciseKind::GHT)
      classes.push_back({ex, Performance::Wrong, label_reev(ex, Performance::Wrong), {}});
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto it = cfg.class_signatures.find(classes[i].name);
    classes[i].sig = it != cfg.class_signatures.end() ? it->second
                                                      : default_signature(static_cast<int>(i));
  }
  std::set<std::tuple<double, double, double>> distinct;
  for (const auto& c : classes)
    distinct.insert({c.sig.freq_hz, c.sig.amp_gyro_dps, c.sig.amp_accel_g});
  if (distinct.size() != classes.size())
    throw Error(Errc::InvalidConfig, "class_signatures must be distinct per class");
  return classes;
}

}  // namespace

std::vector<SessionRecording> synth_generate(const SynthConfig& cfg, std::uint64_t seed) {
  if (cfg.n_volunteers < 2) throw Error(Errc::InvalidConfig, "n_volunteers must be >= 2");
  if (cfg.reps < 1) throw Error(Errc::InvalidConfig, "reps must be >= 1");
  if (cfg.series_per_class < 1) throw Error(Errc::InvalidConfig, "series_per_class must be >= 1");
  if (cfg.noise_std < 0.0) throw Error(Errc::InvalidConfig, "noise_std must be >= 0");
  const auto classes = synth_classes(cfg);
  if (classes.empty()) throw Error(Errc::InvalidConfig, "no exercises configured");

  constexpr std::size_t kGap = 50;  // rest samples between series
  constexpr double kTau = 6.283185307179586476925;
  std::vector<SessionRecording> recs;
  recs.reserve(cfg.n_volunteers);
  for (int v = 0; v < cfg.n_volunteers; ++v) {
    SessionRecording rec;
    char id[16];
    std::snprintf(id, sizeof(id), "v%02d", v + 1);
    rec.volunteer_id = id;
    Rng rng(derive_seed(seed, 0x5e71 + static_cast<std::uint64_t>(v)));
    const double vol_scale = 1.0 + 0.02 * (v % 5);

    // Lay out the series on the common timeline first.
    std::size_t cursor = kGap;
    struct Placed {
      const SynthClass* cls;
      std::size_t start, end;
    };
    std::vector<Placed> placed;
    for (const auto& cls : classes) {
      const int reps = cls.exercise == ExerciseKind::SQT ? std::min(cfg.reps, 15) : cfg.reps;
      const std::size_t samples_per_rep =
          static_cast<std::size_t>(std::lround(kNominalRateHz / cls.sig.freq_hz));
      const std::size_t len = static_cast<std::size_t>(reps) * std::max<std::size_t>(samples_per_rep, 10);
      for (int r = 0; r < cfg.series_per_class; ++r) {
        placed.push_back({&cls, cursor, cursor + len});
        ExerciseSeries series;
        series.exercise = cls.exercise;
        series.performance = cls.performance;
        series.start_sample = cursor;
        series.end_sample = cursor + len;
        series.repetitions = reps;
        rec.series.push_back(series);
        cursor += len + kGap;
      }
    }
    const std::size_t total = cursor;

    for (int k = 0; k < kNumImus; ++k) {
      rec.streams[k].slot = static_cast<ImuSlot>(k);
      rec.streams[k].placement = "imu" + std::to_string(k + 1);
      rec.streams[k].samples.resize(total);
      for (std::size_t i = 0; i < total; ++i) rec.streams[k].samples[i].t = static_cast<double>(i) / kNominalRateHz;
    }
    // Gravity-like baseline on the accelerometer x axis.
    for (int k = 0; k < kNumImus; ++k)
      for (auto& s : rec.streams[k].samples) s.accel[0] = 1.0;

    std::size_t series_ordinal = 0;
    for (const auto& p : placed) {
      const ClassSignature& sig = p.cls->sig;
      const double phase_shift = 0.1 * static_cast<double>(series_ordinal % 4);
      for (std::size_t i = p.start; i < p.end; ++i) {
        const double t = static_cast<double>(i - p.start) / kNominalRateHz;
        for (int s = 0; s < kNumSignals; ++s) {
          const int imu = s / kSignalsPerImu;
          const int ch = s % kSignalsPerImu;
          const double amp_base = ch < 3 ? sig.amp_gyro_dps : sig.amp_accel_g;
          const double amp = amp_base * (1.0 + 0.04 * ((s * 7) % 5)) * vol_scale;
          const double phase = kTau * s / kNumSignals + phase_shift;
          const double value = amp * std::sin(kTau * sig.freq_hz * t + phase);
          auto& sample = rec.streams[imu].samples[i];
          if (ch < 3)
            sample.gyro[ch] += value;
          else
            sample.accel[ch - 3] += value;
        }
      }
      ++series_ordinal;
    }
    if (cfg.noise_std > 0.0) {
      for (int k = 0; k < kNumImus; ++k)
        for (auto& sample : rec.streams[k].samples) {
          for (double& g : sample.gyro) g += rng.normal(0.0, cfg.noise_std);
          for (double& a : sample.accel) a += rng.normal(0.0, cfg.noise_std * 0.05);
        }
    }
    recs.push_back(std::move(rec));
  }
  return recs;
}

SynthConfig load_synth_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::Io, "cannot open " + file.string());
  SynthConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::Parse, file.string() + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const std::string ctx = file.string() + ":" + std::to_string(lineno);
    if (key == "n_volunteers") {
      cfg.n_volunteers = static_cast<int>(parse_int(value, ctx));
    } else if (key == "exercises") {
      cfg.exercises.clear();
      if (value != "all")
        for (const auto& tok : split(value, ','))
          cfg.exercises.push_back(exercise_from_string(trim(tok)));
    } else if (key == "reps") {
      cfg.reps = static_cast<int>(parse_int(value, ctx));
    } else if (key == "noise_std") {
      cfg.noise_std = parse_double(value, ctx);
    } else if (key == "include_wrong") {
      cfg.include_wrong = value == "1" || lower(value) == "true";
    } else if (key == "series_per_class") {
      cfg.series_per_class = static_cast<int>(parse_int(value, ctx));
    } else if (key == "class_signatures") {
      if (value != "auto")
        throw Error(Errc::Parse, ctx + ": class_signatures accepts 'auto' or per-class signature.<CLASS> lines");
    } else if (key.rfind("signature.", 0) == 0) {
      const std::string cls = key.substr(10);
      const auto parts = split(value, ' ');
      ClassSignature sig;
      bool have_freq = false;
      for (const auto& raw : parts) {
        const std::string part = trim(raw);
        if (part.empty()) continue;
        const std::size_t colon = part.find(':');
        if (colon == std::string::npos) throw Error(Errc::Parse, ctx + ": expected name:value");
        const std::string name = part.substr(0, colon);
        const double v = parse_double(part.substr(colon + 1), ctx);
        if (name == "freq") {
          sig.freq_hz = v;
          have_freq = true;
        } else if (name == "amp_gyro") {
          sig.amp_gyro_dps = v;
        } else if (name == "amp_accel") {
          sig.amp_accel_g = v;
        } else {
          throw Error(Errc::Parse, ctx + ": unknown signature field '" + name + "'");
        }
      }
      if (!have_freq) throw Error(Errc::Parse, ctx + ": signature needs freq");
      cfg.class_signatures[cls] = sig;
    } else {
      throw Error(Errc::Parse, ctx + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

void write_synth_config(const fs::path& file, const SynthConfig& cfg) {
  std::ofstream out(file);
  if (!out) throw Error(Errc::Io, "cannot open " + file.string());
  out << "n_volunteers = " << cfg.n_volunteers << "\n";
  out << "exercises = ";
  if (cfg.exercises.empty()) {
    out << "all";
  } else {
    for (std::size_t i = 0; i < cfg.exercises.size(); ++i)
      out << (i ? "," : "") << to_string(cfg.exercises[i]);
  }
  out << "\n";
  out << "reps = " << cfg.reps << "\n";
  out << "noise_std = " << cfg.noise_std << "\n";
  out << "include_wrong = " << (cfg.include_wrong ? 1 : 0) << "\n";
  out << "series_per_class = " << cfg.series_per_class << "\n";
  if (cfg.class_signatures.empty()) {
    out << "class_signatures = auto\n";
  } else {
    for (const auto& [name, sig] : cfg.class_signatures)
      out << "signature." << name << " = freq:" << sig.freq_hz << " amp_gyro:" << sig.amp_gyro_dps
          << " amp_accel:" << sig.amp_accel_g << "\n";
  }
}

std::vector<std::vector<double>> slice_series(const SessionRecording& rec,
                                              const ExerciseSeries& series) {
  const auto same = [&](const ExerciseSeries& s) {
    return s.exercise == series.exercise && s.performance == series.performance &&
           s.start_sample == series.start_sample && s.end_sample == series.end_sample;
  };
  if (std::none_of(rec.series.begin(), rec.series.end(), same))
    throw Error(Errc::SeriesNotInRecording,
                rec.volunteer_id + ": series " + to_string(series.exercise) + " [" +
                    std::to_string(series.start_sample) + ", " +
                    std::to_string(series.end_sample) + ") not in recording");
  if (series.start_sample >= series.end_sample)
    throw Error(Errc::SeriesNotInRecording, rec.volunteer_id + ": empty series slice");
  for (const auto& st : rec.streams)
    if (series.end_sample > st.samples.size())
      throw Error(Errc::SeriesNotInRecording, rec.volunteer_id + ": series past stream end");

  const std::size_t len = series.end_sample - series.start_sample;
  std::vector<std::vector<double>> out(kNumSignals, std::vector<double>(len));
  for (int k = 0; k < kNumImus; ++k) {
    const auto& samples = rec.streams[k].samples;
    for (std::size_t i = 0; i < len; ++i) {
      const ImuSample& s = samples[series.start_sample + i];
      for (int c = 0; c < 3; ++c) out[k * kSignalsPerImu + c][i] = s.gyro[c];
      for (int c = 0; c < 3; ++c) out[k * kSignalsPerImu + 3 + c][i] = s.accel[c];
    }
  }
  return out;
}

std::uint64_t dataset_hash(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&](const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(data[i]);
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& f : files) {
    const std::string rel = fs::relative(f, root).generic_string();
    mix(rel.data(), rel.size());
    std::ifstream in(f, std::ios::binary);
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) mix(buf, static_cast<std::size_t>(in.gcount()));
  }
  return h;
}

}  // namespace exeval
