#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "algebroid/polynomial.hpp"

namespace algebroid {

struct SolverOptions {
  double residual_tol = 1e-12;  // backward error |p(z)| / sum |a_k||z|^k
  int max_iterations = 200;
  int max_restarts = 4;
  std::uint64_t seed = 0x5eed5eedULL;
};

// All roots of p (with multiplicity) by simultaneous Aberth-Ehrlich
// iteration. Exact zero roots are split off before iterating. Throws
// SolverDiverged when the cap is exhausted on every restart.
std::vector<cplx> solve_roots(const CPoly& p, const SolverOptions& opts = {});

// Point of the Riemann sphere.
struct SpherePoint {
  cplx value{};
  bool infinite = false;

  static SpherePoint finite(cplx v) { return {v, false}; }
  static SpherePoint at_infinity() { return {0.0, true}; }
  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

double chordal_distance(cplx a, cplx b);
double chordal_distance(const SpherePoint& a, const SpherePoint& b);

struct Cluster {
  cplx center;
  int multiplicity = 0;
};

// Union-find clustering: points closer than rel_tol * (1 + |z|) merge.
// Output is sorted by (real, imag) of the cluster centers.
std::vector<Cluster> cluster_points(std::span<const cplx> points, double rel_tol = 1e-6);

// Minimum-cost perfect matching for a square cost matrix (row-major).
// Exhaustive for n <= 8, Hungarian algorithm above. Returns assignment[row] = column.
std::vector<int> optimal_assignment(std::span<const double> cost, int n);

}  // namespace algebroid
