#include "exeval/types.hpp"

#include "exeval/error.hpp"

namespace exeval {

const std::array<ExerciseKind, kNumExercises>& all_exercises() {
  static const std::array<ExerciseKind, kNumExercises> kinds = {
      ExerciseKind::EAH, ExerciseKind::EFE, ExerciseKind::SQZ, ExerciseKind::GAT,
      ExerciseKind::GHT, ExerciseKind::HAL, ExerciseKind::HAR, ExerciseKind::KFL,
      ExerciseKind::KFR, ExerciseKind::SQT};
  return kinds;
}

LimbGroup limb_group(ExerciseKind kind) {
  switch (kind) {
    case ExerciseKind::SQZ:
    case ExerciseKind::EFE:
    case ExerciseKind::EAH:
      return LimbGroup::Upper;
    default:
      return LimbGroup::Lower;
  }
}

std::string to_string(ExerciseKind kind) {
  switch (kind) {
    case ExerciseKind::EAH: return "EAH";
    case ExerciseKind::EFE: return "EFE";
    case ExerciseKind::SQZ: return "SQZ";
    case ExerciseKind::GAT: return "GAT";
    case ExerciseKind::GHT: return "GHT";
    case ExerciseKind::HAL: return "HAL";
    case ExerciseKind::HAR: return "HAR";
    case ExerciseKind::KFL: return "KFL";
    case ExerciseKind::KFR: return "KFR";
    case ExerciseKind::SQT: return "SQT";
  }
  return "?";
}

ExerciseKind exercise_from_string(const std::string& s) {
  for (ExerciseKind k : all_exercises()) {
    if (to_string(k) == s) return k;
  }
  throw Error(Errc::Parse, "unknown exercise code '" + s + "'");
}

char to_char(Performance p) { return p == Performance::Correct ? 'C' : 'W'; }

Performance performance_from_char(char c) {
  if (c == 'C') return Performance::Correct;
  if (c == 'W') return Performance::Wrong;
  throw Error(Errc::Parse, std::string("unknown performance code '") + c + "'");
}

}  // namespace exeval
