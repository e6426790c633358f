#pragma once

#include <cstdint>

#include "exeval/classifiers/common.hpp"

namespace exeval {

struct LabeledSplit {
  std::span<const double> x;
  std::size_t dim = 0;
  const std::vector<std::string>* y = nullptr;
};

// Default search grids: KNN k in 1..20, ELM hidden in
// {10, 20, 50, 100, 200, 500, 1000}, DT min_leaf in {1, 2, 5, 10, 20, 50}.
// Families without a grid get the single base point.
std::vector<AlgoConfig> default_grid(Algo kind, const AlgoConfig& base);

// Trains every grid point on the training split (each with a derived seed)
// and returns the one with the highest validation accuracy. Ties go to the
// smaller model: smaller k, fewer neurons, larger min_leaf, else the earlier
// grid point.
AlgoConfig tune(const std::vector<AlgoConfig>& grid, const LabeledSplit& train,
                const LabeledSplit& validation, std::uint64_t seed);

}  // namespace exeval
