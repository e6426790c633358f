#include "exeval/classifiers/common.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>

#include "exeval/classifiers/elm.hpp"
#include "exeval/classifiers/forest.hpp"
#include "exeval/classifiers/knn.hpp"
#include "exeval/classifiers/mlp.hpp"
#include "exeval/classifiers/serialize.hpp"
#include "exeval/classifiers/svm.hpp"
#include "exeval/classifiers/tree.hpp"
#include "exeval/error.hpp"

namespace exeval {

std::string to_string(Algo a) {
  switch (a) {
    case Algo::SvmL: return "svm-l";
    case Algo::SvmP: return "svm-p";
    case Algo::SvmG: return "svm-g";
    case Algo::Dt: return "dt";
    case Algo::Rf: return "rf";
    case Algo::Knn: return "knn";
    case Algo::Elm: return "elm";
    case Algo::Mlp: return "mlp";
  }
  return "?";
}

Algo algo_from_string(const std::string& s) {
  static const std::map<std::string, Algo> names = {
      {"svm-l", Algo::SvmL}, {"svm-p", Algo::SvmP}, {"svm-g", Algo::SvmG}, {"dt", Algo::Dt},
      {"rf", Algo::Rf},      {"knn", Algo::Knn},    {"elm", Algo::Elm},    {"mlp", Algo::Mlp}};
  const auto it = names.find(s);
  if (it == names.end()) throw Error(Errc::InvalidConfig, "unknown algorithm '" + s + "'");
  return it->second;
}

std::string AlgoConfig::describe() const {
  std::ostringstream out;
  out << to_string(kind);
  switch (kind) {
    case Algo::SvmL:
    case Algo::SvmP:
    case Algo::SvmG:
      out << " C=" << svm.c;
      if (kind == Algo::SvmG) out << " gamma=" << (svm.gamma > 0 ? svm.gamma : 0.0);
      if (kind == Algo::SvmP) out << " degree=" << svm.degree << " coef0=" << svm.coef0;
      break;
    case Algo::Dt:
      out << " min_leaf=" << dt.min_leaf_size;
      break;
    case Algo::Rf:
      out << " trees=" << rf.n_trees << " min_leaf=" << rf.min_leaf_size;
      break;
    case Algo::Knn:
      out << " k=" << knn.k;
      break;
    case Algo::Elm:
      out << " hidden=" << elm.n_hidden;
      break;
    case Algo::Mlp:
      out << " hidden="
          << (mlp.n_hidden > 0 ? std::to_string(mlp.n_hidden) : std::string("rule"));
      break;
  }
  return out.str();
}

std::size_t argmax_score(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

std::size_t Classifier::predict_index(std::span<const double> x) const {
  return argmax_score(decision_scores(x));
}

const std::string& Classifier::predict(std::span<const double> x) const {
  return classes()[predict_index(x)];
}

std::unique_ptr<Classifier> train(const AlgoConfig& config, std::span<const double> x,
                                  std::size_t dim, const std::vector<std::string>& y,
                                  std::uint64_t seed) {
  if (dim == 0) throw Error(Errc::DimensionMismatch, "zero feature dimension");
  if (y.size() < 2) throw Error(Errc::InsufficientData, "need at least 2 training samples");
  if (x.size() != y.size() * dim)
    throw Error(Errc::DimensionMismatch, "feature rows do not match label count");
  for (double v : x)
    if (!std::isfinite(v)) throw Error(Errc::NonFiniteFeature, "non-finite feature value");

  std::vector<std::string> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2)
    throw Error(Errc::DegenerateLabels, "training labels collapse to a single class");

  std::vector<int> ids(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto it = std::lower_bound(classes.begin(), classes.end(), y[i]);
    ids[i] = static_cast<int>(it - classes.begin());
  }
  const DataView data{x.data(), y.size(), dim, ids.data()};

  switch (config.kind) {
    case Algo::SvmL:
    case Algo::SvmP:
    case Algo::SvmG:
      return SvmModel::fit(config.kind, config.svm, data, classes);
    case Algo::Dt:
      return DtModel::fit(config.dt, data, classes);
    case Algo::Rf:
      return RfModel::fit(config.rf, data, classes, seed);
    case Algo::Knn:
      return KnnModel::fit(config.knn, data, classes);
    case Algo::Elm:
      return ElmModel::fit(config.elm, data, classes, seed);
    case Algo::Mlp:
      return MlpModel::fit(config.mlp, data, classes, seed);
  }
  throw Error(Errc::InvalidConfig, "unknown algorithm kind");
}

std::unique_ptr<Classifier> load_model(std::istream& in) {
  const auto pos = in.tellg();
  std::string header, kind_line;
  if (!std::getline(in, header) || !std::getline(in, kind_line))
    throw Error(Errc::Parse, "truncated model");
  if (kind_line.rfind("kind ", 0) != 0) throw Error(Errc::Parse, "model missing kind");
  const std::string kind = kind_line.substr(5);
  in.seekg(pos);
  if (kind == "svm-l" || kind == "svm-p" || kind == "svm-g") return SvmModel::load(in);
  if (kind == "dt") return DtModel::load(in);
  if (kind == "rf") return RfModel::load(in);
  if (kind == "knn") return KnnModel::load(in);
  if (kind == "elm") return ElmModel::load(in);
  if (kind == "mlp") return MlpModel::load(in);
  throw Error(Errc::Parse, "unknown model kind '" + kind + "'");
}

}  // namespace exeval
