#pragma once

// Independent reference computations used only by the tests.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "algebroid/polyalg.hpp"

namespace oracle {

using algebroid::cplx;

// Roots of sum c_k w^k via the eigenvalues of the companion matrix.
inline std::vector<cplx> companion_roots(std::vector<cplx> c) {
  while (!c.empty() && c.back() == cplx(0.0)) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  const auto ev = es.eigenvalues();
  return std::vector<cplx>(ev.data(), ev.data() + n);
}

inline std::vector<cplx> oracle_roots(const algebroid::AlgebroidEquation& eq, cplx z) {
  return companion_roots(eq.coefficients_at(z));
}

// Nearest-neighbour continuation: prev[i] -> the closest unused root.
inline std::vector<cplx> follow(const std::vector<cplx>& prev, const std::vector<cplx>& next) {
  std::vector<cplx> out(prev.size());
  std::vector<bool> used(next.size(), false);
  for (std::size_t i = 0; i < prev.size(); ++i) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < next.size(); ++j)
      if (!used[j] && std::abs(next[j] - prev[i]) < bd) {
        bd = std::abs(next[j] - prev[i]);
        best = j;
      }
    used[best] = true;
    out[i] = next[best];
  }
  return out;
}

// Continues `start` along the polyline through `path` using `samples`
// equally spaced points per segment.
inline std::vector<cplx> dense_track(const algebroid::AlgebroidEquation& eq, const std::vector<cplx>& path,
                                     std::vector<cplx> start, int samples) {
  for (std::size_t s = 0; s + 1 < path.size(); ++s)
    for (int k = 1; k <= samples; ++k) {
      const cplx z = path[s] + (path[s + 1] - path[s]) * (static_cast<double>(k) / samples);
      start = follow(start, oracle_roots(eq, z));
    }
  return start;
}

// Permutation of a loop around a circle sampled at n points, starting at
// center + radius e^{i angle} with roots `start` (perm[i] = index of the
// start root reached by root i).
inline std::vector<int> dense_circle_permutation(const algebroid::AlgebroidEquation& eq, cplx center, double radius,
                                                 double angle, const std::vector<cplx>& start, int n) {
  std::vector<cplx> cur = start;
  for (int k = 1; k <= n; ++k)
    cur = follow(cur, oracle_roots(eq, center + std::polar(radius, angle + 2.0 * 3.14159265358979323846 * k / n)));
  std::vector<int> perm(cur.size());
  for (std::size_t i = 0; i < cur.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < start.size(); ++j)
      if (std::abs(cur[i] - start[j]) < std::abs(cur[i] - start[best])) best = j;
    perm[i] = static_cast<int>(best);
  }
  return perm;
}

// A_nu^{2nu-2} prod_{i<j} (w_i - w_j)^2 from companion roots.
inline cplx discriminant_by_roots(const algebroid::AlgebroidEquation& eq, cplx z) {
  const auto w = oracle_roots(eq, z);
  const int nu = eq.nu();
  cplx p = std::pow(eq.leading()(z), 2 * nu - 2);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) p *= (w[i] - w[j]) * (w[i] - w[j]);
  return p;
}

}  // namespace oracle
