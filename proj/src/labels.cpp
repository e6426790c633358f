#include "exeval/labels.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "exeval/error.hpp"
#include "exeval/rng.hpp"

namespace exeval {

std::string label_reev(ExerciseKind exercise, Performance performance) {
  if (exercise == ExerciseKind::GHT) {
    if (performance == Performance::Wrong)
      throw Error(Errc::InvalidCombination,
                  "GHT has no wrong variant; label wrong heel-tiptoe gait as GAT-W");
    return "GHT";
  }
  return to_string(exercise) + "-" + to_char(performance);
}

std::pair<ExerciseKind, Performance> decode_reev(const std::string& label) {
  if (label == "GHT") return {ExerciseKind::GHT, Performance::Correct};
  if (label.size() == 5 && label[3] == '-')
    return {exercise_from_string(label.substr(0, 3)), performance_from_char(label[4])};
  throw Error(Errc::UnknownLabel, "not a ReEv label: '" + label + "'");
}

std::string label_recw(ExerciseKind exercise, Performance performance) {
  if (performance == Performance::Correct) return to_string(exercise);
  return limb_group(exercise) == LimbGroup::Upper ? "WU" : "WL";
}

std::string label_stage1(ExerciseKind exercise) { return to_string(exercise); }

std::string label_stage2(Performance performance) { return std::string(1, to_char(performance)); }

const std::vector<std::string>& reev_classes() {
  static const std::vector<std::string> classes = [] {
    std::vector<std::string> v;
    for (ExerciseKind ex : all_exercises()) v.push_back(label_reev(ex, Performance::Correct));
    for (ExerciseKind ex : all_exercises())
      if (ex != ExerciseKind::GHT) v.push_back(label_reev(ex, Performance::Wrong));
    return v;
  }();
  return classes;
}

const std::vector<std::string>& recw_classes() {
  static const std::vector<std::string> classes = [] {
    std::vector<std::string> v;
    for (ExerciseKind ex : all_exercises()) v.push_back(to_string(ex));
    v.push_back("WU");
    v.push_back("WL");
    return v;
  }();
  return classes;
}

const std::vector<std::string>& stage1_classes() {
  static const std::vector<std::string> classes = [] {
    std::vector<std::string> v;
    for (ExerciseKind ex : all_exercises()) v.push_back(to_string(ex));
    return v;
  }();
  return classes;
}

const std::vector<std::string>& stage2_classes() {
  static const std::vector<std::string> classes = {"C", "W"};
  return classes;
}

WrongPoolTargets size_recw_wrong_pools(const std::map<std::string, std::size_t>& correct_counts) {
  std::size_t max_upper = 0, max_lower = 0;
  for (ExerciseKind ex : all_exercises()) {
    const auto it = correct_counts.find(to_string(ex));
    if (it == correct_counts.end())
      throw Error(Errc::MissingClass, "no count for correct class " + to_string(ex));
    if (limb_group(ex) == LimbGroup::Upper)
      max_upper = std::max(max_upper, it->second);
    else
      max_lower = std::max(max_lower, it->second);
  }
  return WrongPoolTargets{2 * max_upper, 2 * max_lower};
}

namespace {

// Proportional allocation by largest remainder, so every per-exercise share
// is within one sample of exact proportionality.
std::vector<std::size_t> proportional_quota(const std::vector<std::size_t>& pool_sizes,
                                            std::size_t target) {
  std::size_t total = 0;
  for (std::size_t s : pool_sizes) total += s;
  std::vector<std::size_t> quota(pool_sizes.size(), 0);
  if (total == 0) return quota;
  if (target >= total) return pool_sizes;
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < pool_sizes.size(); ++i) {
    const double exact = static_cast<double>(target) * static_cast<double>(pool_sizes[i]) /
                         static_cast<double>(total);
    quota[i] = static_cast<std::size_t>(std::floor(exact));
    assigned += quota[i];
    remainders.push_back({exact - std::floor(exact), i});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < target && k < remainders.size(); ++k) {
    const std::size_t i = remainders[k].second;
    if (quota[i] < pool_sizes[i]) {
      ++quota[i];
      ++assigned;
    }
  }
  // Spill over if some pools were already exhausted by their quota.
  for (std::size_t i = 0; assigned < target && i < pool_sizes.size(); ++i)
    while (assigned < target && quota[i] < pool_sizes[i]) {
      ++quota[i];
      ++assigned;
    }
  return quota;
}

}  // namespace

WrongPoolSelection sample_recw_wrong_pools(const std::vector<WrongCandidate>& pool,
                                           const WrongPoolTargets& targets, std::uint64_t seed) {
  WrongPoolSelection result;
  for (int group = 0; group < 2; ++group) {
    const LimbGroup limb = group == 0 ? LimbGroup::Upper : LimbGroup::Lower;
    const std::size_t target = group == 0 ? targets.wu : targets.wl;
    // Partition this group's candidates by source exercise kind.
    std::vector<ExerciseKind> kinds;
    std::vector<std::vector<std::size_t>> members;  // positions into pool
    for (std::size_t p = 0; p < pool.size(); ++p) {
      if (limb_group(pool[p].exercise) != limb) continue;
      std::size_t k = 0;
      while (k < kinds.size() && kinds[k] != pool[p].exercise) ++k;
      if (k == kinds.size()) {
        kinds.push_back(pool[p].exercise);
        members.emplace_back();
      }
      members[k].push_back(p);
    }
    std::vector<std::size_t> sizes;
    std::size_t pool_total = 0;
    for (const auto& m : members) {
      sizes.push_back(m.size());
      pool_total += m.size();
    }
    const auto quota = proportional_quota(sizes, target);
    std::size_t picked = 0;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      Rng rng(derive_seed(seed, 0xa3b1 + static_cast<std::uint64_t>(kinds[k]) * 2 +
                                    (group == 0 ? 0 : 1)));
      const auto chosen = rng.sample_without_replacement(members[k].size(), quota[k]);
      for (std::size_t c : chosen) result.selected.push_back(pool[members[k][c]].index);
      picked += chosen.size();
    }
    if (group == 0) {
      result.selected_upper = picked;
      result.undersized_upper = pool_total < target;
    } else {
      result.selected_lower = picked;
      result.undersized_lower = pool_total < target;
    }
  }
  std::sort(result.selected.begin(), result.selected.end());
  return result;
}

}  // namespace exeval
