#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "algebroid/branchlab.hpp"
#include "algebroid/domain.hpp"
#include "algebroid/polyalg.hpp"

namespace algebroid {

struct NevanOptions {
  int n_theta = 1024;
  PolyalgOptions polyalg{};
  // Divisor points closer than this to o are rejected.
  double reference_tol = 1e-9;
  // Quadrature nodes closer than this (relative) to a critical point are jittered.
  double node_tol = 1e-9;
  bool parallel = true;
};

// m(r, 1/(w-a)), or m(r, w) for a = infinity.
double proximity(const AlgebroidEquation& eq, const DomainModel& dom, const SpherePoint& a, double r,
                 const NevanOptions& opts = {});

// N(r, 1/(w-a)) (simple = false) or the reduced count (simple = true).
double counting(const AlgebroidEquation& eq, const DomainModel& dom, const SpherePoint& a, double r, bool simple,
                const NevanOptions& opts = {});

// Ramification points with their orders, for N_bran.
struct BranchDivisor {
  std::vector<std::pair<cplx, int>> points;
  int degree() const;
};

// Runs monodromy on a disc containing every critical point.
BranchDivisor branch_divisor(const AlgebroidEquation& eq, std::uint64_t seed, const MonodromyOptions& opts = {});
BranchDivisor branch_divisor(const MonodromyCertificate& cert);

// N_bran(r) = (1/nu) N(r, branch divisor).
double branch_counting(const BranchDivisor& bran, int nu, const DomainModel& dom, double r,
                       const NevanOptions& opts = {});

struct ValueEntry {
  SpherePoint a;
  double m = 0.0;
  double N = 0.0;
  double Nbar = 0.0;
};

struct NevanlinnaSample {
  double r = 0.0;
  double T = 0.0;
  double m = 0.0;
  double N = 0.0;
  double N_bran = 0.0;
  double T_ricci = 0.0;
  std::vector<ValueEntry> values;
};

// T = m(r, w) + N(r, w) plus per-target entries. N_bran is filled when
// `bran` is given.
NevanlinnaSample characteristic(const AlgebroidEquation& eq, const DomainModel& dom, double r,
                                const std::vector<SpherePoint>& targets, const BranchDivisor* bran = nullptr,
                                const NevanOptions& opts = {});

// Samples over a whole grid, evaluated concurrently and merged by index.
std::vector<NevanlinnaSample> characteristic_curve(const AlgebroidEquation& eq, const DomainModel& dom,
                                                   const std::vector<double>& r_grid,
                                                   const std::vector<SpherePoint>& targets,
                                                   const BranchDivisor* bran = nullptr,
                                                   const NevanOptions& opts = {});

struct DefectEstimate {
  SpherePoint a;
  double simple_defect = 0.0;
  double r_lo = 0.0;
  double r_hi = 0.0;
};

// 1 - max over the top half of the grid of Nbar/T, clamped to [0, 1].
DefectEstimate defect_from_series(const SpherePoint& a, const std::vector<double>& r_grid,
                                  const std::vector<double>& nbar, const std::vector<double>& t);
DefectEstimate defect(const AlgebroidEquation& eq, const DomainModel& dom, const SpherePoint& a,
                      const std::vector<double>& r_grid, const NevanOptions& opts = {});

// Geometric grid r_min ... r_max with count points.
std::vector<double> geometric_grid(double r_min, double r_max, int count);

// Runs body(i) for i in [0, n), concurrently when allowed; deterministic
// as long as body only writes to its own slot.
void parallel_for(std::size_t n, bool parallel, const std::function<void(std::size_t)>& body);

}  // namespace algebroid
