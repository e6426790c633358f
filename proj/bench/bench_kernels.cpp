// Timing comparison of the OpenMP batch kernels against their serial
// reference implementations. Not part of the test suite; build and run:
//   cmake --build build --target exeval_bench && ./build/bench/exeval_bench

#include <chrono>
#include <cstdio>
#include <functional>

#include "exeval/classifiers/forest.hpp"
#include "exeval/classifiers/knn.hpp"
#include "exeval/classifiers/svm.hpp"
#include "exeval/dataset.hpp"
#include "exeval/features.hpp"
#include "exeval/matrix.hpp"
#include "exeval/parallel.hpp"
#include "exeval/pipeline.hpp"

using namespace exeval;

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %9.1f ms   openmp %9.1f ms   speedup %.2fx\n", name, serial_ms,
              parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
  std::printf("openmp: %s, threads: %d\n", openmp_enabled() ? "on" : "off",
              max_threads() == 0 ? -1 : max_threads());

  SynthConfig cfg;
  cfg.n_volunteers = 8;
  cfg.reps = 14;
  cfg.noise_std = 2.0;
  const auto recs = synth_generate(cfg, 42);
  const WindowSpec spec = make_window_spec(100);

  WindowSet set;
  {
    WindowSet serial_set;
    const double ts = time_ms([&] { serial_set = featurize_serial(recs, spec); });
    const double tp = time_ms([&] { set = featurize(recs, spec); });
    report("featurize", ts, tp);
  }
  std::printf("windows: %zu x %zu features\n", set.size(), set.dim);

  // Labeled arrays for the classifier kernels.
  std::vector<double> x(set.features);
  std::vector<std::string> labels;
  labels.reserve(set.size());
  for (const auto& m : set.meta) labels.push_back(label_reev(m.exercise, m.performance));
  const Standardizer stdz = fit_standardizer(x, set.size(), set.dim);
  apply_standardizer(stdz, x, set.size());

  std::vector<int> ids(set.size());
  std::vector<std::string> classes(labels);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    ids[i] = static_cast<int>(std::lower_bound(classes.begin(), classes.end(), labels[i]) -
                              classes.begin());
  const DataView data{x.data(), set.size(), set.dim, ids.data()};

  {
    SvmParams params;
    std::unique_ptr<SvmModel> a, b;
    const double ts = time_ms([&] { a = SvmModel::fit_serial(Algo::SvmL, params, data, classes); });
    const double tp = time_ms([&] { b = SvmModel::fit(Algo::SvmL, params, data, classes); });
    report("svm one-vs-one fit", ts, tp);
  }
  {
    RfParams params;
    params.n_trees = 50;
    std::unique_ptr<RfModel> a, b;
    const double ts = time_ms([&] { a = RfModel::fit_serial(params, data, classes, 7); });
    const double tp = time_ms([&] { b = RfModel::fit(params, data, classes, 7); });
    report("random forest fit", ts, tp);
  }
  {
    KnnParams params;
    params.k = 5;
    const auto knn = KnnModel::fit(params, data, classes);
    std::vector<std::size_t> a, b;
    const double ts = time_ms([&] { a = knn->predict_batch_serial(data); });
    const double tp = time_ms([&] { b = knn->predict_batch(data); });
    report("knn batch predict", ts, tp);
    if (a != b) std::printf("MISMATCH: knn parallel differs from serial\n");
  }
  {
    const std::size_t n = 384;
    Matrix ma(n, n), mb(n, n);
    Rng rng(3);
    for (auto& v : ma.data) v = rng.uniform(-1.0, 1.0);
    for (auto& v : mb.data) v = rng.uniform(-1.0, 1.0);
    Matrix ra, rb;
    const double ts = time_ms([&] { ra = matmul_serial(ma, mb); });
    const double tp = time_ms([&] { rb = matmul(ma, mb); });
    report("matmul 384x384", ts, tp);
    if (ra.data != rb.data) std::printf("MISMATCH: matmul parallel differs from serial\n");
  }
  return 0;
}
