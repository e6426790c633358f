#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "exeval/types.hpp"

namespace exeval {

// Dataset layout adapters.
//
// canonical: one directory per volunteer holding imu1.csv..imu4.csv with
// header t,gx,gy,gz,ax,ay,az (t in seconds, gyro in deg/s, accel in g) and a
// labels.csv manifest with header
// volunteer_id,exercise,performance,start_sample,end_sample.
//
// zenodo: an isolated mapping layer for the public deposit. It accepts one
// directory per volunteer containing four NGIMU-style sensor CSVs (header
// names such as "Time (s)", "Gyroscope X (deg/s)", "Accelerometer X (g)";
// extra columns like the magnetometer are ignored) plus a labels manifest in
// the canonical schema. Files are matched case-insensitively.
enum class DatasetAdapter { Canonical, Zenodo };

DatasetAdapter adapter_from_string(const std::string& s);
std::string to_string(DatasetAdapter a);

// Loads one SessionRecording per volunteer directory. Fails rather than
// silently dropping malformed files.
std::vector<SessionRecording> load_dataset(const std::filesystem::path& root,
                                           DatasetAdapter adapter);

// Writes recordings in the canonical layout. load(canonical root) round-trips
// field-for-field (timestamps to 1e-9 s).
void write_canonical(const std::filesystem::path& root,
                     const std::vector<SessionRecording>& recordings);

struct Violation {
  std::string what;
};

// Empty report iff every type invariant holds (4 streams, strictly increasing
// timestamps, sensor ranges, rate within 5% of nominal, series in bounds and
// non-overlapping, GHT never marked wrong).
std::vector<Violation> validate_recording(const SessionRecording& rec);

// Deterministic waveform family assigned to one (exercise, performance)
// class of the synthetic generator.
struct ClassSignature {
  double freq_hz = 1.0;
  double amp_gyro_dps = 30.0;
  double amp_accel_g = 0.4;
};

struct SynthConfig {
  int n_volunteers = 2;
  std::vector<ExerciseKind> exercises;  // empty means all 10
  int reps = 12;
  double noise_std = 0.0;
  bool include_wrong = true;
  int series_per_class = 1;
  // Keyed by the class name (e.g. "GAT-C", "GHT"); empty means the built-in
  // deterministic assignment. Every class present must be distinct.
  std::map<std::string, ClassSignature> class_signatures;
};

// Built-in signature for the class with the given enumeration index.
ClassSignature default_signature(int class_index);

// Deterministic in (config, seed); all generated recordings satisfy the
// SessionRecording invariants, and with noise_std 0 windows from different
// classes have distinct feature vectors.
std::vector<SessionRecording> synth_generate(const SynthConfig& cfg, std::uint64_t seed);

// Key-value synth config file (fields named as in SynthConfig).
SynthConfig load_synth_config(const std::filesystem::path& file);
void write_synth_config(const std::filesystem::path& file, const SynthConfig& cfg);

// The 24 aligned signal segments of one series (imu-major, gx gy gz ax ay az
// within each IMU), each of length end_sample - start_sample. The series must
// belong to the recording.
std::vector<std::vector<double>> slice_series(const SessionRecording& rec,
                                              const ExerciseSeries& series);

// Content hash over all regular files under root (relative path + bytes),
// used as a feature-cache key.
std::uint64_t dataset_hash(const std::filesystem::path& root);

}  // namespace exeval
