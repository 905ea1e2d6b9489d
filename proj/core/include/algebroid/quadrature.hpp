#pragma once

#include <functional>

namespace algebroid {

// Integrand value plus a piecewise-constant label; the integrand is assumed
// smooth wherever the label does not change.
struct PiecewiseSample {
  double value = 0.0;
  int signature = 0;
};

struct QuadratureStats {
  int evaluations = 0;
  bool refined = false;
};

// Mean of a 2 pi-periodic function over [0, 2 pi). Uses the n-point
// trapezoid rule when the signature is constant on its nodes, otherwise
// composite 8-point Gauss-Legendre panels bisected where the signature
// changes.
double periodic_mean(const std::function<PiecewiseSample(double)>& f, int n, QuadratureStats* stats = nullptr);

}  // namespace algebroid
