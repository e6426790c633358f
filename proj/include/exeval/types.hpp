#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace exeval {

inline constexpr double kNominalRateHz = 100.0;
inline constexpr double kRateTolerance = 0.05;
inline constexpr double kGyroRangeDps = 2000.0;
inline constexpr double kAccelRangeG = 16.0;

inline constexpr int kNumImus = 4;
inline constexpr int kSignalsPerImu = 6;  // gx gy gz ax ay az
inline constexpr int kNumSignals = kNumImus * kSignalsPerImu;
inline constexpr int kStatsPerSignal = 4;  // mean std max min
inline constexpr int kNumFeatures = kNumSignals * kStatsPerSignal;

// Exercise catalogue. The order is the canonical report order: the three
// upper-limb exercises first, then the lower-limb block.
enum class ExerciseKind { EAH, EFE, SQZ, GAT, GHT, HAL, HAR, KFL, KFR, SQT };
inline constexpr int kNumExercises = 10;

enum class LimbGroup { Upper, Lower };
enum class Performance { Correct, Wrong };

const std::array<ExerciseKind, kNumExercises>& all_exercises();
LimbGroup limb_group(ExerciseKind kind);
std::string to_string(ExerciseKind kind);
ExerciseKind exercise_from_string(const std::string& s);
char to_char(Performance p);
Performance performance_from_char(char c);

struct ImuSample {
  double t = 0.0;  // seconds
  std::array<double, 3> gyro{};   // deg/s
  std::array<double, 3> accel{};  // g
};

enum class ImuSlot { Imu1 = 0, Imu2 = 1, Imu3 = 2, Imu4 = 3 };

struct SensorStream {
  ImuSlot slot = ImuSlot::Imu1;
  std::string placement;  // free-form descriptor, e.g. "imu1" or "left_thigh"
  double nominal_rate_hz = kNominalRateHz;
  std::vector<ImuSample> samples;
};

// One block of repetitions of a single exercise at a single performance
// quality. [start_sample, end_sample) indexes the session's common timeline.
struct ExerciseSeries {
  ExerciseKind exercise = ExerciseKind::EAH;
  Performance performance = Performance::Correct;
  std::size_t start_sample = 0;
  std::size_t end_sample = 0;
  std::optional<int> repetitions;
};

struct VolunteerMeta {
  std::optional<double> age_years;
  std::optional<double> height_cm;
  std::optional<double> weight_kg;
};

struct SessionRecording {
  std::string volunteer_id;
  std::array<SensorStream, kNumImus> streams;
  std::vector<ExerciseSeries> series;
  VolunteerMeta meta;
};

}  // namespace exeval
