#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "exeval/error.hpp"
#include "exeval/features.hpp"
#include "exeval/rng.hpp"
#include "support.hpp"

using namespace exeval;

TEST_CASE("window spec accepts only the three paper sizes") {
  CHECK(make_window_spec(100).step() == 50);
  CHECK(make_window_spec(200).step() == 100);
  CHECK(make_window_spec(300).step() == 150);
  CHECK_THROWS_AS(make_window_spec(150), Error);
}

TEST_CASE("segment start offsets") {
  const auto s300 = segment(450, make_window_spec(300));
  CHECK(s300 == std::vector<std::size_t>{0, 150});

  CHECK(segment(299, make_window_spec(300)).empty());

  const auto s100 = segment(1000, make_window_spec(100));
  REQUIRE(s100.size() == 19);
  for (std::size_t i = 0; i < s100.size(); ++i) CHECK(s100[i] == 50 * i);
  CHECK(s100.back() == 900);
}

TEST_CASE("segment counts match the closed form on random lengths") {
  Rng rng(11);
  const int sizes[3] = {100, 200, 300};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t length = rng.uniform_int(2000);
    const WindowSpec spec = make_window_spec(sizes[rng.uniform_int(3)]);
    const std::size_t w = spec.size_samples;
    const std::size_t expected = length < w ? 0 : (length - w) / (w / 2) + 1;
    const auto starts = segment(length, spec);
    CHECK(starts.size() == expected);
    CHECK(segment_count(length, spec) == expected);
    // Consecutive windows overlap in exactly half a window and stay in range.
    for (std::size_t i = 0; i < starts.size(); ++i) {
      if (i > 0) CHECK(starts[i] - starts[i - 1] == w / 2);
      CHECK(starts[i] + w <= length);
    }
  }
}

namespace {

std::vector<std::vector<double>> constant_segments(double value, std::size_t w) {
  return std::vector<std::vector<double>>(kNumSignals, std::vector<double>(w, value));
}

}  // namespace

TEST_CASE("feature extraction on a constant signal") {
  const auto features = extract_features(constant_segments(3.25, 50));
  REQUIRE(features.size() == kNumFeatures);
  for (int s = 0; s < kNumSignals; ++s) {
    CHECK(features[s * 4 + 0] == doctest::Approx(3.25));  // mean
    CHECK(features[s * 4 + 1] == doctest::Approx(0.0));   // std
    CHECK(features[s * 4 + 2] == doctest::Approx(3.25));  // max
    CHECK(features[s * 4 + 3] == doctest::Approx(3.25));  // min
  }
}

TEST_CASE("feature extraction hand oracle for [1,2,3,4]") {
  auto segments = constant_segments(0.0, 4);
  segments[0] = {1.0, 2.0, 3.0, 4.0};
  const auto features = extract_features(segments);
  CHECK(features[0] == doctest::Approx(2.5).epsilon(1e-12));
  // Population standard deviation: sqrt(((1.5)^2 + (0.5)^2 + (0.5)^2 + (1.5)^2) / 4).
  CHECK(features[1] == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(features[1] == doctest::Approx(1.118033988749895).epsilon(1e-12));
  CHECK(features[2] == doctest::Approx(4.0));
  CHECK(features[3] == doctest::Approx(1.0));
}

TEST_CASE("feature extraction rejects malformed windows") {
  auto segments = constant_segments(0.0, 10);
  segments[5].pop_back();
  CHECK_THROWS_AS(extract_features(segments), Error);
  CHECK_THROWS_AS(extract_features(constant_segments(0.0, 1)), Error);
  segments.pop_back();
  CHECK_THROWS_AS(extract_features(segments), Error);
}

TEST_CASE("feature extraction matches the reference implementation") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> segments(kNumSignals);
    const std::size_t w = 2 + rng.uniform_int(300);
    for (auto& s : segments) {
      s.resize(w);
      for (double& v : s) v = rng.normal(0.0, 10.0);
    }
    const auto fast = extract_features(segments);
    const auto ref = extract_features_reference(segments);
    REQUIRE(fast.size() == ref.size());
    for (std::size_t i = 0; i < fast.size(); ++i)
      CHECK(fast[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    // Per block: min <= mean <= max and std >= 0.
    for (int s = 0; s < kNumSignals; ++s) {
      CHECK(fast[s * 4 + 3] <= fast[s * 4 + 0] + 1e-12);
      CHECK(fast[s * 4 + 0] <= fast[s * 4 + 2] + 1e-12);
      CHECK(fast[s * 4 + 1] >= 0.0);
    }
  }
}

TEST_CASE("std is zero exactly for constant windows") {
  auto segments = constant_segments(1.5, 64);
  auto features = extract_features(segments);
  CHECK(features[1] == 0.0);
  segments[0][10] += 1e-6;
  features = extract_features(segments);
  CHECK(features[1] > 0.0);
}

TEST_CASE("permuting two IMU slots permutes the corresponding feature blocks") {
  Rng rng(9);
  std::vector<std::vector<double>> segments(kNumSignals, std::vector<double>(32));
  for (auto& s : segments)
    for (double& v : s) v = rng.uniform(-5.0, 5.0);
  const auto base = extract_features(segments);
  // Swap IMU 2 and IMU 4 (slots 1 and 3): signals 6..11 <-> 18..23.
  auto swapped = segments;
  for (int c = 0; c < kSignalsPerImu; ++c)
    std::swap(swapped[1 * kSignalsPerImu + c], swapped[3 * kSignalsPerImu + c]);
  const auto perm = extract_features(swapped);
  const int block = kSignalsPerImu * kStatsPerSignal;  // 24 features per IMU
  for (int i = 0; i < block; ++i) {
    CHECK(perm[1 * block + i] == base[3 * block + i]);
    CHECK(perm[3 * block + i] == base[1 * block + i]);
    CHECK(perm[0 * block + i] == base[0 * block + i]);
    CHECK(perm[2 * block + i] == base[2 * block + i]);
  }
}

TEST_CASE("standardizer hand oracle: all-zeros and all-twos") {
  std::vector<double> x(2 * kNumFeatures, 0.0);
  for (int j = 0; j < kNumFeatures; ++j) x[kNumFeatures + j] = 2.0;
  const Standardizer s = fit_standardizer(x, 2, kNumFeatures);
  for (int j = 0; j < kNumFeatures; ++j) {
    CHECK(s.means[j] == doctest::Approx(1.0));
    CHECK(s.stds[j] == doctest::Approx(1.0));  // population std of {0, 2}
  }
}

TEST_CASE("standardizer degenerate columns fall back to unit scale") {
  std::vector<double> x;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 8; ++j) x.push_back(1.25);
  const Standardizer s = fit_standardizer(x, 5, 8);
  for (int j = 0; j < 8; ++j) {
    CHECK(s.means[j] == doctest::Approx(1.25));
    CHECK(s.stds[j] == 1.0);
  }
}

TEST_CASE("standardizing the fit set zero-centers it") {
  Rng rng(21);
  const std::size_t n = 40, dim = 12;
  std::vector<double> x(n * dim);
  for (double& v : x) v = rng.uniform(-3.0, 17.0);
  const Standardizer s = fit_standardizer(x, n, dim);
  auto z = x;
  apply_standardizer(s, z, n);
  for (std::size_t j = 0; j < dim; ++j) {
    double mean = 0.0, var = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += z[i * dim + j];
    mean /= n;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = z[i * dim + j] - mean;
      var += d * d;
    }
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::abs(std::sqrt(var / n) - 1.0) < 1e-9);
  }
}

TEST_CASE("apply_standardizer componentwise behavior") {
  Standardizer s;
  s.means = {1.0, -2.0, 5.0};
  s.stds = {2.0, 4.0, 0.5};

  const auto zero = apply_standardizer(s, std::vector<double>{1.0, -2.0, 5.0});
  for (double v : zero) CHECK(v == doctest::Approx(0.0));

  Standardizer identity;
  identity.means = {0.0, 0.0, 0.0};
  identity.stds = {1.0, 1.0, 1.0};
  const std::vector<double> x = {3.0, -1.5, 0.25};
  CHECK(apply_standardizer(identity, x) == x);

  const auto ones = apply_standardizer(s, std::vector<double>{3.0, 2.0, 5.5});
  for (double v : ones) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("standardization round-trips through its inverse") {
  Rng rng(33);
  Standardizer s;
  for (int j = 0; j < 10; ++j) {
    s.means.push_back(rng.uniform(-10.0, 10.0));
    s.stds.push_back(rng.uniform(0.1, 4.0));
  }
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(10);
    for (double& v : x) v = rng.uniform(-40.0, 40.0);
    const auto back = invert_standardizer(s, apply_standardizer(s, x));
    for (int j = 0; j < 10; ++j) CHECK(std::abs(back[j] - x[j]) < 1e-9);
  }
}

TEST_CASE("feature dump round-trips bit-exactly") {
  const auto recs = exeval::test::full_synth(2, 0.75, 99, 6);
  const WindowSet set = featurize(recs, make_window_spec(100));
  REQUIRE(set.size() > 0);

  exeval::test::TempDir dir("dump");
  const auto file = dir.path() / "features.csv";
  write_feature_dump(file, set);
  const WindowSet loaded = read_feature_dump(file);

  REQUIRE(loaded.size() == set.size());
  CHECK(loaded.features == set.features);  // bitwise
  for (std::size_t i = 0; i < set.size(); ++i) {
    CHECK(loaded.meta[i].volunteer_id == set.meta[i].volunteer_id);
    CHECK(loaded.meta[i].exercise == set.meta[i].exercise);
    CHECK(loaded.meta[i].performance == set.meta[i].performance);
    CHECK(loaded.meta[i].window_start == set.meta[i].window_start);
  }

  // Writing what was read reproduces the same bytes.
  const auto file2 = dir.path() / "features2.csv";
  write_feature_dump(file2, loaded);
  CHECK(exeval::test::read_file(file) == exeval::test::read_file(file2));
}

TEST_CASE("windows never cross series boundaries") {
  const auto recs = exeval::test::full_synth(2, 0.0, 5, 6);
  const WindowSpec spec = make_window_spec(200);
  const WindowSet set = featurize(recs, spec);
  for (const auto& m : set.meta) {
    bool found = false;
    for (const auto& rec : recs) {
      if (rec.volunteer_id != m.volunteer_id) continue;
      const auto& series = rec.series.at(m.series_ordinal);
      CHECK(series.exercise == m.exercise);
      CHECK(series.performance == m.performance);
      CHECK(m.window_start + spec.size_samples <=
            series.end_sample - series.start_sample);
      found = true;
    }
    CHECK(found);
  }
}
