#pragma once

#include <span>

namespace exeval {

enum class KernelKind { Linear, Polynomial, Gaussian };

struct KernelParams {
  KernelKind kind = KernelKind::Linear;
  double gamma = 1.0;
  int degree = 3;
  double coef0 = 0.0;
};

// linear: <x,z>; polynomial: (gamma*<x,z> + coef0)^degree;
// gaussian: exp(-gamma*||x-z||^2). Symmetric in x and z.
double kernel_eval(const KernelParams& params, std::span<const double> x,
                   std::span<const double> z);

}  // namespace exeval
