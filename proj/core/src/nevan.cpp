#include "algebroid/nevan.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "algebroid/errors.hpp"
#include "algebroid/quadrature.hpp"

namespace algebroid {

namespace {

// Points whose images make the boundary integrand singular or non-smooth.
std::vector<cplx> hazards(const AlgebroidEquation& eq, const SpherePoint& a, double s, const NevanOptions& opts) {
  std::vector<cplx> pts;
  for (const auto& c : all_critical_points(eq, opts.polyalg)) pts.push_back(c.location);
  if (!a.infinite) {
    const CPoly vp = value_polynomial(eq, a.value);
    if (vp.is_zero()) fail(ErrorCode::kIdenticallyZero, "w is identically equal to the target value");
    for (const auto& e : polynomial_divisor(vp, opts.polyalg).entries) pts.push_back(e.location);
  }
  std::vector<cplx> near;
  for (const cplx c : pts)
    if (std::abs(std::abs(c) - s) < 1e-6 * (1.0 + s)) near.push_back(c);
  return near;
}

}  // namespace

double proximity(const AlgebroidEquation& eq, const DomainModel& dom, const SpherePoint& a, double r,
                 const NevanOptions& opts) {
  const double s = dom.boundary_radius(r);
  const auto danger = hazards(eq, a, s, opts);
  const double tol = opts.node_tol * (1.0 + s);
  const double jitter = 0.381966 * std::numbers::pi / opts.n_theta;
  const double inv_nu = 1.0 / eq.nu();

  auto f = [&](double theta) -> PiecewiseSample {
    auto hit = [&](double t) {
      const cplx z = std::polar(s, t);
      for (const cplx c : danger)
        if (std::abs(z - c) < tol) return true;
      return false;
    };
    if (hit(theta)) {
      theta += jitter;
      if (hit(theta)) fail(ErrorCode::kBoundaryHitsCritical, "quadrature node coincides with a critical point");
    }
    const RootSet rs = roots_at(eq, std::polar(s, theta), opts.polyalg);
    double acc = 0.0;
    int sig = 0;
    if (a.infinite) {
      if (rs.infinite_count > 0) fail(ErrorCode::kBoundaryHitsCritical, "pole on the boundary circle");
      for (const cplx w : rs.finite) {
        const double l = std::log(std::abs(w));
        if (l > 0.0) {
          acc += l;
          ++sig;
        }
      }
    } else {
      for (const cplx w : rs.finite) {
        const double d = std::abs(w - a.value);
        if (d < 1.0) {
          acc -= std::log(d);
          ++sig;
        }
      }
    }
    return {acc * inv_nu * dom.poisson_weight(theta, r), sig};
  };
  return periodic_mean(f, opts.n_theta);
}

double counting(const AlgebroidEquation& eq, const DomainModel& dom, const SpherePoint& a, double r, bool simple,
                const NevanOptions& opts) {
  const Disc disc{0.0, dom.boundary_radius(r)};
  const Divisor1D d = a.infinite ? pole_divisor(eq, disc, opts.polyalg) : zero_divisor(eq, a, disc, opts.polyalg);
  const double scale = opts.reference_tol * (1.0 + std::abs(dom.reference()));
  double sum = 0.0;
  for (const auto& e : d.entries) {
    if (std::abs(e.location - dom.reference()) < scale)
      fail(ErrorCode::kValueAtReference, "target value is attained at the reference point");
    sum += (simple ? 1 : e.multiplicity) * std::numbers::pi * dom.green(e.location, r);
  }
  return sum / eq.nu();
}

int BranchDivisor::degree() const {
  int total = 0;
  for (const auto& p : points) total += p.second;
  return total;
}

BranchDivisor branch_divisor(const MonodromyCertificate& cert) { return {cert.branch_points()}; }

BranchDivisor branch_divisor(const AlgebroidEquation& eq, std::uint64_t seed, const MonodromyOptions& opts) {
  if (eq.nu() == 1) return {};
  const auto crit = all_critical_points(eq, opts.track.polyalg);
  if (crit.empty()) return {};
  double reach = 0.0;
  for (const auto& c : crit) reach = std::max(reach, std::abs(c.location));
  return branch_divisor(monodromy(eq, Disc{0.0, 1.5 * reach + 1.0}, seed, opts));
}

double branch_counting(const BranchDivisor& bran, int nu, const DomainModel& dom, double r,
                       const NevanOptions& opts) {
  const double scale = opts.reference_tol * (1.0 + std::abs(dom.reference()));
  double sum = 0.0;
  for (const auto& [x, order] : bran.points) {
    if (!dom.inside(x, r)) continue;
    if (std::abs(x - dom.reference()) < scale)
      fail(ErrorCode::kValueAtReference, "branch point at the reference point");
    sum += order * std::numbers::pi * dom.green(x, r);
  }
  return sum / nu;
}

namespace {

NevanlinnaSample characteristic_at(const AlgebroidEquation& eq, const DomainModel& dom, double r,
                                   const std::vector<SpherePoint>& targets, const BranchDivisor* bran,
                                   const NevanOptions& opts) {
  NevanlinnaSample s;
  s.r = r;
  const SpherePoint inf = SpherePoint::at_infinity();
  s.m = proximity(eq, dom, inf, r, opts);
  s.N = counting(eq, dom, inf, r, false, opts);
  s.T = s.m + s.N;
  s.T_ricci = dom.ricci_characteristic(r);
  if (bran) s.N_bran = branch_counting(*bran, eq.nu(), dom, r, opts);
  for (const auto& a : targets) {
    ValueEntry v;
    v.a = a;
    if (a.infinite) {
      v.m = s.m;
      v.N = s.N;
    } else {
      v.m = proximity(eq, dom, a, r, opts);
      v.N = counting(eq, dom, a, r, false, opts);
    }
    v.Nbar = counting(eq, dom, a, r, true, opts);
    s.values.push_back(v);
  }
  return s;
}

}  // namespace

NevanlinnaSample characteristic(const AlgebroidEquation& eq, const DomainModel& dom, double r,
                                const std::vector<SpherePoint>& targets, const BranchDivisor* bran,
                                const NevanOptions& opts) {
  try {
    return characteristic_at(eq, dom, r, targets, bran, opts);
  } catch (const Error& e) {
    throw with_context(e, "r = " + std::to_string(r));
  }
}

void parallel_for(std::size_t n, bool parallel, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = parallel ? std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(mu);
        // Keep the lowest failing index so the reported error is deterministic.
        if (i < failed_at) {
          failed_at = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<NevanlinnaSample> characteristic_curve(const AlgebroidEquation& eq, const DomainModel& dom,
                                                   const std::vector<double>& r_grid,
                                                   const std::vector<SpherePoint>& targets,
                                                   const BranchDivisor* bran, const NevanOptions& opts) {
  std::vector<NevanlinnaSample> out(r_grid.size());
  parallel_for(r_grid.size(), opts.parallel,
               [&](std::size_t i) { out[i] = characteristic(eq, dom, r_grid[i], targets, bran, opts); });
  return out;
}

DefectEstimate defect_from_series(const SpherePoint& a, const std::vector<double>& r_grid,
                                  const std::vector<double>& nbar, const std::vector<double>& t) {
  const std::size_t n = r_grid.size();
  if (n < 8) fail(ErrorCode::kInvalidArgument, "defect estimation needs at least 8 grid points");
  if (nbar.size() != n || t.size() != n) fail(ErrorCode::kInvalidArgument, "series length mismatch");
  for (std::size_t i = 1; i < n; ++i)
    if (!(r_grid[i] > r_grid[i - 1])) fail(ErrorCode::kInvalidArgument, "r grid must be increasing");
  DefectEstimate d;
  d.a = a;
  d.r_lo = r_grid[n / 2];
  d.r_hi = r_grid.back();
  double best = 0.0;
  for (std::size_t i = n / 2; i < n; ++i)
    if (t[i] > 1e-12) best = std::max(best, nbar[i] / t[i]);
  d.simple_defect = std::clamp(1.0 - best, 0.0, 1.0);
  return d;
}

DefectEstimate defect(const AlgebroidEquation& eq, const DomainModel& dom, const SpherePoint& a,
                      const std::vector<double>& r_grid, const NevanOptions& opts) {
  std::vector<double> nbar(r_grid.size()), t(r_grid.size());
  parallel_for(r_grid.size(), opts.parallel, [&](std::size_t i) {
    const SpherePoint inf = SpherePoint::at_infinity();
    t[i] = proximity(eq, dom, inf, r_grid[i], opts) + counting(eq, dom, inf, r_grid[i], false, opts);
    nbar[i] = counting(eq, dom, a, r_grid[i], true, opts);
  });
  return defect_from_series(a, r_grid, nbar, t);
}

std::vector<double> geometric_grid(double r_min, double r_max, int count) {
  if (!(r_min > 0.0) || !(r_max > r_min) || count < 2)
    fail(ErrorCode::kInvalidArgument, "geometric grid needs 0 < r_min < r_max and count >= 2");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double ratio = std::log(r_max / r_min);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = r_min * std::exp(ratio * i / (count - 1));
  g.front() = r_min;
  g.back() = r_max;
  return g;
}

}  // namespace algebroid
