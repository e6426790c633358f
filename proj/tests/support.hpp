#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "exeval/dataset.hpp"
#include "exeval/features.hpp"
#include "exeval/rng.hpp"

namespace exeval::test {

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& file);

// Labeled Gaussian blobs around per-class centers; the workhorse input for
// the classifier tests.
struct Blobs {
  std::vector<double> x;  // row-major n x dim
  std::vector<std::string> y;
  std::size_t dim = 0;
  std::size_t n() const { return y.size(); }
};

Blobs make_blobs(const std::vector<std::vector<double>>& centers, std::size_t per_class,
                 double spread, std::uint64_t seed,
                 const std::vector<std::string>& names = {});

// Small full-taxonomy synthetic recordings (all 10 exercises, correct+wrong).
std::vector<SessionRecording> full_synth(int n_volunteers, double noise_std, std::uint64_t seed,
                                         int reps = 8);

// Row indices of a window set split by volunteer membership.
std::vector<std::size_t> rows_of(const WindowSet& set,
                                 const std::vector<std::string>& volunteers);

}  // namespace exeval::test
