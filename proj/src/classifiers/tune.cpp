#include "exeval/classifiers/tune.hpp"

#include <limits>

#include "exeval/error.hpp"
#include "exeval/parallel.hpp"
#include "exeval/rng.hpp"

namespace exeval {

std::vector<AlgoConfig> default_grid(Algo kind, const AlgoConfig& base) {
  std::vector<AlgoConfig> grid;
  AlgoConfig c = base;
  c.kind = kind;
  switch (kind) {
    case Algo::Knn:
      for (int k = 1; k <= 20; ++k) {
        c.knn.k = k;
        grid.push_back(c);
      }
      break;
    case Algo::Elm:
      for (int h : {10, 20, 50, 100, 200, 500, 1000}) {
        c.elm.n_hidden = h;
        grid.push_back(c);
      }
      break;
    case Algo::Dt:
      for (int leaf : {1, 2, 5, 10, 20, 50}) {
        c.dt.min_leaf_size = leaf;
        grid.push_back(c);
      }
      break;
    default:
      grid.push_back(c);
      break;
  }
  return grid;
}

namespace {

// Smaller rank = smaller model; used only to break validation-accuracy ties.
double model_size_rank(const AlgoConfig& c) {
  switch (c.kind) {
    case Algo::Knn: return c.knn.k;
    case Algo::Elm: return c.elm.n_hidden;
    case Algo::Dt: return -c.dt.min_leaf_size;
    case Algo::Rf: return c.rf.n_trees;
    case Algo::Mlp: return c.mlp.n_hidden;
    default: return 0.0;
  }
}

}  // namespace

AlgoConfig tune(const std::vector<AlgoConfig>& grid, const LabeledSplit& train,
                const LabeledSplit& validation, std::uint64_t seed) {
  if (grid.empty()) throw Error(Errc::EmptyGrid, "no hyperparameter candidates");
  std::vector<double> accuracy(grid.size(), -1.0);
  parallel_for(grid.size(), [&](std::size_t g) {
    const auto model = exeval::train(grid[g], train.x, train.dim, *train.y,
                                     derive_seed(seed, 0x90c0 + g));
    std::size_t correct = 0;
    const std::size_t n_val = validation.y->size();
    for (std::size_t i = 0; i < n_val; ++i) {
      const auto row = validation.x.subspan(i * validation.dim, validation.dim);
      if (model->predict(row) == (*validation.y)[i]) ++correct;
    }
    accuracy[g] = n_val > 0 ? static_cast<double>(correct) / static_cast<double>(n_val) : 0.0;
  });
  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    if (accuracy[g] > accuracy[best] ||
        (accuracy[g] == accuracy[best] &&
         model_size_rank(grid[g]) < model_size_rank(grid[best])))
      best = g;
  }
  return grid[best];
}

}  // namespace exeval
