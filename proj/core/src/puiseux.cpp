#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "algebroid/branchlab.hpp"
#include "algebroid/errors.hpp"

namespace algebroid {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

cplx ipow(cplx x, int n) {
  cplx r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Coefficients G_k(s) of psi(center + s, b0 + v) = sum_k G_k(s) v^k, or of
// phi(center + s, v) = sum_k A_{nu-k}(center + s) v^k in the reciprocal chart.
std::vector<CPoly> local_coefficients(const AlgebroidEquation& eq, cplx center, cplx b0, bool reciprocal) {
  const int nu = eq.nu();
  std::vector<CPoly> g(static_cast<std::size_t>(nu) + 1);
  for (int k = 0; k <= nu; ++k) {
    if (reciprocal) {
      g[static_cast<std::size_t>(k)] = eq.A(nu - k).shifted(center);
      continue;
    }
    CPoly acc;
    for (int j = k; j <= nu; ++j) acc += eq.A(j) * (binomial(j, k) * ipow(b0, j - k));
    g[static_cast<std::size_t>(k)] = acc.shifted(center);
  }
  return g;
}

// Lowest power whose coefficient is significant, or -1 for a negligible polynomial.
int valuation(const CPoly& p, double scale, double zero_tol) {
  for (int i = 0; i <= p.degree() && !p.is_zero(); ++i)
    if (std::abs(p[i]) > zero_tol * scale) return i;
  return -1;
}

double backward_error(const AlgebroidEquation& eq, cplx z, cplx w) {
  const int nu = eq.nu();
  if (!std::isfinite(std::abs(w))) return 0.0;
  if (std::abs(w) <= 1.0) {
    double scale = 0.0;
    cplx acc = 0.0;
    for (int j = nu; j >= 0; --j) {
      const cplx a = eq.A(j)(z);
      acc = acc * w + a;
      scale += std::abs(a) * std::pow(std::abs(w), j);
    }
    return scale > 0.0 ? std::abs(acc) / scale : 0.0;
  }
  const cplx u = 1.0 / w;
  double scale = 0.0;
  cplx acc = 0.0;
  for (int k = nu; k >= 0; --k) {
    const cplx a = eq.A(nu - k)(z);
    acc = acc * u + a;
    scale += std::abs(a) * std::pow(std::abs(u), k);
  }
  return scale > 0.0 ? std::abs(acc) / scale : 0.0;
}

}  // namespace

cplx PuiseuxExpansion::coefficient(int n) const {
  if (n == 0) return coefficients.empty() ? cplx{} : coefficients.front();
  if (n < tau || n > truncation_order) return 0.0;
  return coefficients.at(static_cast<std::size_t>(n - tau + 1));
}

cplx PuiseuxExpansion::branch_value(cplx zeta) const {
  cplx u = coefficient(0);
  cplx p = ipow(zeta, tau);
  for (int n = tau; n <= truncation_order; ++n) {
    u += coefficient(n) * p;
    p *= zeta;
  }
  return reciprocal ? 1.0 / u : u;
}

std::vector<std::pair<int, int>> newton_polygon_slopes(const AlgebroidEquation& eq, cplx center, cplx b0,
                                                       bool reciprocal, double zero_tol) {
  const auto g = local_coefficients(eq, center, b0, reciprocal);
  double scale = 0.0;
  for (const auto& p : g) scale = std::max(scale, p.norm_inf());
  std::vector<std::pair<int, int>> pts;  // (k, valuation)
  for (int k = 0; k < static_cast<int>(g.size()); ++k) {
    const int e = valuation(g[static_cast<std::size_t>(k)], scale, zero_tol);
    if (e >= 0) pts.emplace_back(k, e);
  }
  // G_0 vanishing identically means b0 is a root for every s.
  if (pts.empty() || pts.front().first != 0) return {};
  // Lower hull from (0, e_0) to the first point of zero valuation.
  std::size_t last = 0;
  while (last < pts.size() && pts[last].second != 0) ++last;
  if (last == pts.size()) last = pts.size() - 1;
  std::vector<std::pair<int, int>> out;
  std::size_t i = 0;
  while (i < last) {
    std::size_t best = i + 1;
    for (std::size_t j = i + 1; j <= last; ++j) {
      // Steepest descent: minimal (e_j - e_i)/(k_j - k_i).
      const long lhs = static_cast<long>(pts[j].second - pts[i].second) * (pts[best].first - pts[i].first);
      const long rhs = static_cast<long>(pts[best].second - pts[i].second) * (pts[j].first - pts[i].first);
      if (lhs <= rhs) best = j;
    }
    const int num = pts[i].second - pts[best].second;
    const int den = pts[best].first - pts[i].first;
    if (num > 0) {
      const int g2 = std::gcd(num, den);
      out.emplace_back(num / g2, den / g2);
    }
    i = best;
  }
  return out;
}

PuiseuxExpansion puiseux_expand(const AlgebroidEquation& eq, cplx center, const SheetCycle& cycle, int order,
                                const PuiseuxOptions& opts) {
  const int lambda = static_cast<int>(cycle.start_roots.size());
  if (lambda < 1) fail(ErrorCode::kInvalidArgument, "empty sheet cycle");
  if (order < 1) fail(ErrorCode::kInvalidArgument, "truncation order must be positive");

  std::vector<cplx> obstacles;
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& c : all_critical_points(eq, opts.track.polyalg)) {
    obstacles.push_back(c.location);
    const double d = std::abs(c.location - center);
    if (d > 1e-9 * (1.0 + std::abs(center))) nearest = std::min(nearest, d);
  }
  const double rho = std::min(opts.ring_radius, 0.5 * nearest);
  const cplx offset = cycle.start_point - center;
  if (std::abs(offset) == 0.0) fail(ErrorCode::kInvalidArgument, "cycle start point coincides with the centre");
  const cplx dir = offset / std::abs(offset);
  const cplx z_ring = center + rho * dir;

  // Identify the cycle roots among the full root set at the start point.
  RootSet start = roots_at(eq, cycle.start_point, opts.track.polyalg);
  if (start.infinite_count != 0) fail(ErrorCode::kFitIllConditioned, "start point carries a root at infinity");
  auto nearest_index = [](const std::vector<cplx>& roots, cplx w) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
      if (chordal_distance(roots[i], w) < chordal_distance(roots[best], w)) best = i;
    return best;
  };
  std::vector<std::size_t> cycle_idx;
  for (const cplx w : cycle.start_roots) cycle_idx.push_back(nearest_index(start.finite, w));

  RootSet ring = start;
  if (std::abs(z_ring - cycle.start_point) > 0.0) {
    const std::vector<cplx> radial{cycle.start_point, z_ring};
    ring = track_roots(eq, radial, start, opts.track, obstacles).end;
  }
  std::vector<cplx> cycle_at_ring;
  for (const auto i : cycle_idx) cycle_at_ring.push_back(ring.finite[i]);

  // Choose the centre value b0 (possibly infinity) the cycle collapses onto.
  const RootSet at_center = roots_at(eq, center, opts.track.polyalg);
  bool reciprocal = false;
  cplx b0 = 0.0;
  double best = std::numeric_limits<double>::infinity();
  PolyalgOptions loose = opts.track.polyalg;
  loose.multiple_root_radius = 1e-2;
  const CPoly fibre(eq.coefficients_at(center));
  for (const auto& cl : cluster_roots(fibre, at_center.finite, loose)) {
    if (cl.multiplicity < lambda && lambda > 1) continue;
    double d = 0.0;
    for (const cplx w : cycle_at_ring) d = std::max(d, chordal_distance(w, cl.center));
    if (d < best) {
      best = d;
      b0 = cl.center;
    }
  }
  if (at_center.infinite_count >= lambda) {
    double d = 0.0;
    for (const cplx w : cycle_at_ring) d = std::max(d, chordal_distance(SpherePoint::finite(w), SpherePoint::at_infinity()));
    if (d < best) {
      reciprocal = true;
      b0 = 0.0;
    }
  }

  PuiseuxExpansion ex;
  ex.center = center;
  ex.lambda = lambda;
  ex.reciprocal = reciprocal;
  const double s = std::pow(rho, 1.0 / lambda);
  ex.ring_radius = s;

  // Transport the first cycle root once around the ring lambda times.
  const int M = std::max(4 * order, 16) * 1;
  const int sub = 8;
  const double theta0 = std::arg(dir) / lambda;
  std::vector<cplx> zeta(static_cast<std::size_t>(M));
  std::vector<cplx> u(static_cast<std::size_t>(M));
  std::size_t idx = cycle_idx.front();
  RootSet cur = ring;
  for (int m = 0; m < M; ++m) {
    zeta[static_cast<std::size_t>(m)] = std::polar(s, theta0 + 2.0 * kPi * m / M);
    const cplx w = cur.finite[idx];
    u[static_cast<std::size_t>(m)] = reciprocal ? 1.0 / w : w;
    std::vector<cplx> path;
    for (int q = 0; q <= sub; ++q) {
      const double phi = lambda * (theta0 + 2.0 * kPi * (m + static_cast<double>(q) / sub) / M);
      path.push_back(center + std::polar(rho, phi));
    }
    cur = track_roots(eq, path, cur, opts.track, obstacles).end;
  }
  const cplx back = cur.finite[idx];
  if (chordal_distance(back, cycle_at_ring.front()) > 1e-6)
    fail(ErrorCode::kFitIllConditioned, "sheet cycle does not close after lambda turns");

  // Leading exponent: Newton polygon, disambiguated by the spectrum.
  std::vector<cplx> dft(static_cast<std::size_t>(M));
  double dmax = 0.0;
  for (int n = 0; n < M; ++n) {
    cplx acc = 0.0;
    for (int m = 0; m < M; ++m)
      acc += u[static_cast<std::size_t>(m)] * std::polar(1.0, -2.0 * kPi * n * m / M - n * theta0);
    dft[static_cast<std::size_t>(n)] = acc / static_cast<double>(M);
    if (n > 0) dmax = std::max(dmax, std::abs(dft[static_cast<std::size_t>(n)]));
  }
  int first = -1;
  for (int n = 1; n < M / 2 && first < 0; ++n)
    if (std::abs(dft[static_cast<std::size_t>(n)]) > 1e-8 * std::max(dmax, 1e-300)) first = n;
  std::vector<int> candidates;
  for (const auto& [num, den] : newton_polygon_slopes(eq, center, b0, reciprocal, opts.zero_tol))
    if ((num * lambda) % den == 0) candidates.push_back(num * lambda / den);
  int tau = first > 0 ? first : 1;
  if (!candidates.empty()) {
    auto it = std::find(candidates.begin(), candidates.end(), first);
    if (it != candidates.end()) {
      tau = first;
    } else if (first < 0) {
      tau = *std::min_element(candidates.begin(), candidates.end());
    } else {
      tau = *std::min_element(candidates.begin(), candidates.end(),
                              [&](int a, int b) { return std::abs(a - first) < std::abs(b - first); });
    }
  }
  order = std::max(order, tau);
  ex.tau = tau;
  ex.truncation_order = order;
  if (std::pow(s, order) < 1e-13)
    fail(ErrorCode::kFitIllConditioned, "ring too small for the requested truncation order");

  // Least squares on normalised monomials (zeta/s)^n, n = 0, tau..order.
  const int cols = order - tau + 2;
  if (cols > M) fail(ErrorCode::kFitIllConditioned, "too few samples for the requested order");
  Eigen::MatrixXcd a(M, cols);
  Eigen::VectorXcd rhs(M);
  for (int m = 0; m < M; ++m) {
    const cplx t = zeta[static_cast<std::size_t>(m)] / s;
    a(m, 0) = 1.0;
    for (int n = tau; n <= order; ++n) a(m, n - tau + 1) = ipow(t, n);
    rhs(m) = u[static_cast<std::size_t>(m)];
  }
  const Eigen::VectorXcd x = a.colPivHouseholderQr().solve(rhs);
  const double unorm = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  ex.fit_residual = (a * x - rhs).cwiseAbs().maxCoeff() / unorm;
  ex.coefficients.resize(static_cast<std::size_t>(cols));
  ex.coefficients[0] = x(0);
  for (int n = tau; n <= order; ++n) ex.coefficients[static_cast<std::size_t>(n - tau + 1)] = x(n - tau + 1) / std::pow(s, n);

  // Pick the sheet labelling zeta -> omega^m zeta that makes b_tau closest to the positive real axis.
  if (lambda > 1 && std::abs(ex.coefficients[1]) > 0.0) {
    int best_m = 0;
    double best_arg = std::numeric_limits<double>::infinity();
    for (int m = 0; m < lambda; ++m) {
      const double arg = std::abs(std::arg(ex.coefficients[1] * std::polar(1.0, 2.0 * kPi * m * tau / lambda)));
      if (arg < best_arg - 1e-12) {
        best_arg = arg;
        best_m = m;
      }
    }
    for (int n = tau; n <= order; ++n)
      ex.coefficients[static_cast<std::size_t>(n - tau + 1)] *= std::polar(1.0, 2.0 * kPi * best_m * n / lambda);
  }

  double sub_res = 0.0;
  for (int m = 0; m < M; ++m) {
    const cplx zt = std::polar(s, theta0 + 2.0 * kPi * (m + 0.5) / M);
    sub_res = std::max(sub_res, backward_error(eq, center + ipow(zt, lambda), ex.branch_value(zt)));
  }
  ex.substitution_residual = sub_res;
  return ex;
}

}  // namespace algebroid
