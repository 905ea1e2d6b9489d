#include "algebroid/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "algebroid/errors.hpp"

namespace algebroid {
namespace {

constexpr double kPi = 3.14159265358979323846;

bool converged_at(const CPoly& p, cplx z, double tol) {
  const double scale = p.magnitude_at(z);
  return std::abs(p(z)) <= tol * scale;
}

// Radius from the Fujiwara bound, halved: a cheap guess for the root annulus.
double initial_radius(const CPoly& p) {
  const int n = p.degree();
  const cplx lead = p.leading();
  double r = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ratio = std::abs(p[k] / lead);
    if (ratio == 0.0) continue;
    double e = std::pow(ratio, 1.0 / (n - k));
    if (k == 0) e = std::pow(ratio / 2.0, 1.0 / n);
    r = std::max(r, e);
  }
  return r > 0.0 ? r : 1.0;
}

bool aberth_pass(const CPoly& p, std::vector<cplx>& z, const SolverOptions& opts) {
  const std::size_t n = z.size();
  std::vector<bool> done(n, false);
  for (int it = 0; it < opts.max_iterations; ++it) {
    bool all = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      auto [pv, dpv] = p.eval_with_derivative(z[k]);
      if (std::abs(pv) <= opts.residual_tol * p.magnitude_at(z[k])) {
        done[k] = true;
        continue;
      }
      all = false;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const cplx ratio = dpv == cplx(0.0) ? cplx(1e-3) : pv / dpv;
      const cplx step = ratio / (1.0 - ratio * repulsion);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[k] -= step;
    }
    if (all) return true;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!converged_at(p, z[k], opts.residual_tol)) return false;
  return true;
}

}  // namespace

std::vector<cplx> solve_roots(const CPoly& p, const SolverOptions& opts) {
  if (p.is_zero()) fail(ErrorCode::kInvalidArgument, "roots of the zero polynomial");
  std::vector<cplx> roots;
  int low = 0;
  while (p[low] == cplx(0.0)) ++low;
  roots.assign(static_cast<std::size_t>(low), 0.0);
  CPoly q(std::vector<cplx>(p.coeffs().begin() + low, p.coeffs().end()));
  const int n = q.degree();
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-q[0] / q[1]);
    return roots;
  }

  const cplx center = -q[n - 1] / (static_cast<double>(n) * q[n]);
  const double radius = std::max(initial_radius(q.shifted(center)), 1e-8);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * kPi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = center + radius * std::polar(1.0, ang);
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
    if (aberth_pass(q, z, opts)) {
      roots.insert(roots.end(), z.begin(), z.end());
      return roots;
    }
    // Stagnation: jitter every estimate and iterate again.
    for (auto& zk : z) zk += 0.1 * radius * cplx(unit(rng), unit(rng));
  }
  fail(ErrorCode::kSolverDiverged,
       "Aberth iteration did not reach tolerance for a degree-" + std::to_string(n) + " polynomial");
}

double chordal_distance(cplx a, cplx b) {
  return 2.0 * std::abs(a - b) / (std::sqrt(1.0 + std::norm(a)) * std::sqrt(1.0 + std::norm(b)));
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.infinite && b.infinite) return 0.0;
  if (a.infinite) return 2.0 / std::sqrt(1.0 + std::norm(b.value));
  if (b.infinite) return 2.0 / std::sqrt(1.0 + std::norm(a.value));
  return chordal_distance(a.value, b.value);
}

std::vector<Cluster> cluster_points(std::span<const cplx> points, double rel_tol) {
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = 1.0 + std::max(std::abs(points[i]), std::abs(points[j]));
      if (std::abs(points[i] - points[j]) < rel_tol * scale) parent[find(i)] = find(j);
    }
  std::vector<Cluster> out;
  std::vector<std::size_t> root_of_cluster;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(root_of_cluster.begin(), root_of_cluster.end(), r);
    if (it == root_of_cluster.end()) {
      root_of_cluster.push_back(r);
      out.push_back({points[i], 1});
    } else {
      auto& c = out[static_cast<std::size_t>(it - root_of_cluster.begin())];
      c.center += points[i];
      ++c.multiplicity;
    }
  }
  for (auto& c : out) c.center /= static_cast<double>(c.multiplicity);
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return out;
}

namespace {

std::vector<int> hungarian(std::span<const double> cost, int n) {
  // Classic O(n^3) potentials formulation, 1-based internally.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[static_cast<std::size_t>((i0 - 1) * n + (j - 1))] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assign(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) assign[static_cast<std::size_t>(p[j] - 1)] = j - 1;
  return assign;
}

}  // namespace

std::vector<int> optimal_assignment(std::span<const double> cost, int n) {
  if (n <= 0) return {};
  if (n > 8) return hungarian(cost, n);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += cost[static_cast<std::size_t>(i * n + perm[static_cast<std::size_t>(i)])];
    if (c < best_cost) {
      best_cost = c;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace algebroid
