#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "exeval/matrix.hpp"

namespace exeval::detail {

// Line-oriented structured-text model container. Doubles are written with 17
// significant digits, so a load reproduces bit-identical predictions.
inline constexpr const char* kModelHeader = "exeval-model 1";

class ModelWriter {
 public:
  explicit ModelWriter(std::ostream& out);
  void line(const std::string& key, const std::string& value);
  void line(const std::string& key, std::size_t value);
  void line(const std::string& key, int value);
  void classes(const std::vector<std::string>& classes);
  void doubles(const std::string& key, const std::vector<double>& values);
  void ints(const std::string& key, const std::vector<int>& values);
  void matrix(const std::string& key, const Matrix& m);

 private:
  std::ostream& out_;
};

inline constexpr std::size_t kAnyCount = static_cast<std::size_t>(-1);

class ModelReader {
 public:
  explicit ModelReader(std::istream& in);
  std::string str(const std::string& key);
  std::size_t size(const std::string& key);
  long long integer(const std::string& key);
  std::vector<std::string> classes();
  std::vector<double> doubles(const std::string& key, std::size_t expect);
  std::vector<int> ints(const std::string& key, std::size_t expect);
  Matrix matrix(const std::string& key, std::size_t rows, std::size_t cols);

 private:
  std::string expect_key(const std::string& key);
  std::istream& in_;
};

std::string format_double(double v);

}  // namespace exeval::detail
