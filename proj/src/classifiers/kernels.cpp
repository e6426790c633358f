#include "exeval/classifiers/kernels.hpp"

#include <cmath>

#include "exeval/error.hpp"

namespace exeval {

double kernel_eval(const KernelParams& params, std::span<const double> x,
                   std::span<const double> z) {
  if (x.size() != z.size())
    throw Error(Errc::DimensionMismatch, "kernel arguments differ in dimension");
  switch (params.kind) {
    case KernelKind::Linear: {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * z[i];
      return dot;
    }
    case KernelKind::Polynomial: {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * z[i];
      return std::pow(params.gamma * dot + params.coef0, params.degree);
    }
    case KernelKind::Gaussian: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - z[i];
        d2 += d * d;
      }
      return std::exp(-params.gamma * d2);
    }
  }
  return 0.0;
}

}  // namespace exeval
