#include "exeval/classifiers/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "exeval/error.hpp"

namespace exeval::detail {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ModelWriter::ModelWriter(std::ostream& out) : out_(out) { out_ << kModelHeader << "\n"; }

void ModelWriter::line(const std::string& key, const std::string& value) {
  out_ << key << ' ' << value << "\n";
}

void ModelWriter::line(const std::string& key, std::size_t value) {
  out_ << key << ' ' << value << "\n";
}

void ModelWriter::line(const std::string& key, int value) { out_ << key << ' ' << value << "\n"; }

void ModelWriter::classes(const std::vector<std::string>& classes) {
  out_ << "classes " << classes.size() << "\n";
  for (const auto& c : classes) out_ << c << "\n";
}

void ModelWriter::doubles(const std::string& key, const std::vector<double>& values) {
  out_ << key << ' ' << values.size();
  for (double v : values) out_ << ' ' << format_double(v);
  out_ << "\n";
}

void ModelWriter::ints(const std::string& key, const std::vector<int>& values) {
  out_ << key << ' ' << values.size();
  for (int v : values) out_ << ' ' << v;
  out_ << "\n";
}

void ModelWriter::matrix(const std::string& key, const Matrix& m) {
  out_ << key << ' ' << m.rows << ' ' << m.cols << "\n";
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c)
      out_ << (c ? " " : "") << format_double(m.at(r, c));
    out_ << "\n";
  }
}

ModelReader::ModelReader(std::istream& in) : in_(in) {
  std::string header;
  if (!std::getline(in_, header) || header != kModelHeader)
    throw Error(Errc::Parse, "bad model header '" + header + "'");
}

std::string ModelReader::expect_key(const std::string& key) {
  std::string line;
  if (!std::getline(in_, line)) throw Error(Errc::Parse, "model truncated before key " + key);
  if (line.rfind(key + " ", 0) != 0 && line != key)
    throw Error(Errc::Parse, "expected model key '" + key + "', found '" + line + "'");
  return line.size() > key.size() ? line.substr(key.size() + 1) : std::string();
}

std::string ModelReader::str(const std::string& key) { return expect_key(key); }

std::size_t ModelReader::size(const std::string& key) {
  return static_cast<std::size_t>(std::stoull(expect_key(key)));
}

long long ModelReader::integer(const std::string& key) { return std::stoll(expect_key(key)); }

std::vector<std::string> ModelReader::classes() {
  const std::size_t n = size("classes");
  std::vector<std::string> out(n);
  for (auto& c : out)
    if (!std::getline(in_, c)) throw Error(Errc::Parse, "model truncated in class list");
  return out;
}

std::vector<double> ModelReader::doubles(const std::string& key, std::size_t expect) {
  const std::string rest = expect_key(key);
  const char* p = rest.c_str();
  char* end = nullptr;
  const std::size_t n = std::strtoull(p, &end, 10);
  if (expect != kAnyCount && n != expect)
    throw Error(Errc::Parse, "model key " + key + ": expected " + std::to_string(expect) +
                                 " doubles, found " + std::to_string(n));
  std::vector<double> out(n);
  p = end;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::strtod(p, &end);
    if (end == p) throw Error(Errc::Parse, "model key " + key + ": short double list");
    p = end;
  }
  return out;
}

std::vector<int> ModelReader::ints(const std::string& key, std::size_t expect) {
  const std::string rest = expect_key(key);
  const char* p = rest.c_str();
  char* end = nullptr;
  const std::size_t n = std::strtoull(p, &end, 10);
  if (expect != kAnyCount && n != expect)
    throw Error(Errc::Parse, "model key " + key + ": expected " + std::to_string(expect) +
                                 " ints, found " + std::to_string(n));
  std::vector<int> out(n);
  p = end;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<int>(std::strtol(p, &end, 10));
    if (end == p) throw Error(Errc::Parse, "model key " + key + ": short int list");
    p = end;
  }
  return out;
}

Matrix ModelReader::matrix(const std::string& key, std::size_t rows, std::size_t cols) {
  const std::string rest = expect_key(key);
  char* end = nullptr;
  const std::size_t r = std::strtoull(rest.c_str(), &end, 10);
  const std::size_t c = std::strtoull(end, &end, 10);
  if (r != rows || c != cols)
    throw Error(Errc::Parse, "model key " + key + ": matrix shape mismatch");
  Matrix m(rows, cols);
  std::string line;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in_, line)) throw Error(Errc::Parse, "model truncated in matrix " + key);
    const char* p = line.c_str();
    for (std::size_t j = 0; j < cols; ++j) {
      m.at(i, j) = std::strtod(p, &end);
      if (end == p) throw Error(Errc::Parse, "model matrix " + key + ": short row");
      p = end;
    }
  }
  return m;
}

}  // namespace exeval::detail
