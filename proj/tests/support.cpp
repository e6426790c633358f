#include "support.hpp"

#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace exeval::test {

namespace {
std::uint64_t unique_counter() {
  static std::uint64_t n = 0;
  return ++n;
}
}  // namespace

TempDir::TempDir(const std::string& tag) {
  path_ = std::filesystem::temp_directory_path() /
          ("exeval_" + tag + "_" + std::to_string(::getpid()) + "_" +
           std::to_string(unique_counter()));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Blobs make_blobs(const std::vector<std::vector<double>>& centers, std::size_t per_class,
                 double spread, std::uint64_t seed, const std::vector<std::string>& names) {
  Blobs blobs;
  blobs.dim = centers.front().size();
  Rng rng(seed);
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const std::string name = c < names.size() ? names[c] : "class" + std::to_string(c);
    for (std::size_t i = 0; i < per_class; ++i) {
      for (double v : centers[c]) blobs.x.push_back(v + rng.normal(0.0, spread));
      blobs.y.push_back(name);
    }
  }
  return blobs;
}

std::vector<SessionRecording> full_synth(int n_volunteers, double noise_std, std::uint64_t seed,
                                         int reps) {
  SynthConfig cfg;
  cfg.n_volunteers = n_volunteers;
  cfg.reps = reps;
  cfg.noise_std = noise_std;
  cfg.include_wrong = true;
  cfg.series_per_class = 1;
  return synth_generate(cfg, seed);
}

std::vector<std::size_t> rows_of(const WindowSet& set,
                                 const std::vector<std::string>& volunteers) {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < set.size(); ++r)
    if (std::find(volunteers.begin(), volunteers.end(), set.meta[r].volunteer_id) !=
        volunteers.end())
      rows.push_back(r);
  return rows;
}

}  // namespace exeval::test
