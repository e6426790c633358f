#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "exeval/types.hpp"

namespace exeval {

// Labeling schemes and their class-set cardinalities: ReEv 19, ReCW 12,
// Stage1 10, Stage2 2.
enum class LabelScheme { ReEv, ReCW, Stage1, Stage2 };

// "X-C" / "X-W", except GHT which carries no performance suffix. Rejects
// (GHT, Wrong); a wrongly performed heel-tiptoe gait is labeled GAT-W at
// ingestion.
std::string label_reev(ExerciseKind exercise, Performance performance);
// Inverse of label_reev; "GHT" decodes to (GHT, Correct).
std::pair<ExerciseKind, Performance> decode_reev(const std::string& label);

// Correct exercises keep their kind; wrong performances pool into WU / WL by
// limb group.
std::string label_recw(ExerciseKind exercise, Performance performance);

std::string label_stage1(ExerciseKind exercise);
std::string label_stage2(Performance performance);

// Canonical class orders used in reports: correct block first (upper-limb
// exercises, then lower), wrong block after.
const std::vector<std::string>& reev_classes();
const std::vector<std::string>& recw_classes();
const std::vector<std::string>& stage1_classes();
const std::vector<std::string>& stage2_classes();

struct WrongPoolTargets {
  std::size_t wu = 0;
  std::size_t wl = 0;
};

// WU/WL sizing rule: double the number of samples in the largest correct
// class of each limb group. The counts must cover all 10 correct classes.
WrongPoolTargets size_recw_wrong_pools(const std::map<std::string, std::size_t>& correct_counts);

struct WrongCandidate {
  std::size_t index = 0;  // caller-side row index
  ExerciseKind exercise = ExerciseKind::EAH;
};

struct WrongPoolSelection {
  std::vector<std::size_t> selected;  // indices of chosen candidates
  bool undersized_upper = false;
  bool undersized_lower = false;
  std::size_t selected_upper = 0;
  std::size_t selected_lower = 0;
};

// Stratified random sampling from the wrong-performance pools, proportional
// across source exercise kinds within each limb group, deterministic for a
// fixed seed. Undersized pools are clamped and flagged, never fatal. Training
// side only; evaluation windows are never subsampled.
WrongPoolSelection sample_recw_wrong_pools(const std::vector<WrongCandidate>& pool,
                                           const WrongPoolTargets& targets, std::uint64_t seed);

}  // namespace exeval
