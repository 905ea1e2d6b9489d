#include "algebroid/branchlab.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

#include "algebroid/errors.hpp"

namespace algebroid {

std::string_view to_string(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::kMultipleRoot: return "multiple-root";
    case CriticalKind::kPoleBranch: return "pole-branch";
    case CriticalKind::kBoth: return "both";
  }
  return "unknown";
}

namespace {

constexpr double kPi = std::numbers::pi;

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool has_multiple_finite_root(const AlgebroidEquation& eq, cplx z, const PolyalgOptions& opts) {
  const RootSet rs = roots_at(eq, z, opts);
  if (rs.infinite_count >= 2) return false;
  for (const auto& c : cluster_points(rs.finite, opts.cluster_tol))
    if (c.multiplicity > 1) return true;
  return false;
}

// Evaluation of psi in either chart: w directly, or u = 1/w through
// phi(z, u) = sum_j A_j(z) u^{nu - j}.
class ChartedEquation {
 public:
  explicit ChartedEquation(const AlgebroidEquation& eq) : eq_(eq) {
    for (const auto& a : eq.coefficients()) deriv_.push_back(a.derivative());
  }

  int nu() const { return eq_.nu(); }

  // Returns F, F_x and F_z at (z, x) in the chosen chart.
  void eval(cplx z, cplx x, bool reciprocal, cplx& f, cplx& fx, cplx& fz) const {
    const int nu = eq_.nu();
    f = fx = fz = 0.0;
    for (int k = nu; k >= 0; --k) {
      // Horner in x over chart coefficients c_k, c_k = A_k (w chart) or A_{nu-k}.
      const int j = reciprocal ? nu - k : k;
      const cplx a = eq_.A(j)(z);
      const cplx da = deriv_[static_cast<std::size_t>(j)](z);
      fx = fx * x + f;
      f = f * x + a;
      fz = fz * x + da;
    }
  }

 private:
  const AlgebroidEquation& eq_;
  std::vector<CPoly> deriv_;
};

double min_separation(std::span<const cplx> roots) {
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) sep = std::min(sep, chordal_distance(roots[i], roots[j]));
  return sep;
}

// Predictor-corrector step for one root. Returns false if Newton fails.
bool continue_root(const ChartedEquation& ce, cplx z0, cplx z1, cplx w0, int iterations, cplx& w1) {
  const bool reciprocal = std::abs(w0) > 1.0;
  cplx x = reciprocal ? 1.0 / w0 : w0;
  cplx f, fx, fz;
  ce.eval(z0, x, reciprocal, f, fx, fz);
  if (fx == cplx(0.0)) return false;
  x += -fz / fx * (z1 - z0);
  for (int it = 0; it < iterations; ++it) {
    ce.eval(z1, x, reciprocal, f, fx, fz);
    if (fx == cplx(0.0)) return false;
    const cplx dx = f / fx;
    x -= dx;
    if (std::abs(dx) <= 1e-14 * (1.0 + std::abs(x))) {
      if (reciprocal && x == cplx(0.0)) return false;
      w1 = reciprocal ? 1.0 / x : x;
      return std::isfinite(w1.real()) && std::isfinite(w1.imag());
    }
  }
  return false;
}

}  // namespace

std::vector<CriticalPoint> all_critical_points(const AlgebroidEquation& eq, const PolyalgOptions& opts) {
  std::vector<CriticalPoint> out;
  const Divisor1D jdiv = polynomial_divisor(discriminant(eq, opts), opts);
  const Divisor1D adiv = polynomial_divisor(eq.leading(), opts);
  for (const auto& e : jdiv.entries) out.push_back({e.location, CriticalKind::kMultipleRoot, e.multiplicity});
  for (const auto& e : adiv.entries) {
    auto it = std::find_if(out.begin(), out.end(), [&](const CriticalPoint& c) {
      return std::abs(c.location - e.location) < opts.cluster_tol * (1.0 + std::abs(e.location));
    });
    const CriticalKind kind =
        has_multiple_finite_root(eq, e.location, opts) ? CriticalKind::kBoth : CriticalKind::kPoleBranch;
    if (it == out.end())
      out.push_back({e.location, kind, 0});
    else
      it->kind = kind;
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return out;
}

std::vector<CriticalPoint> critical_points(const AlgebroidEquation& eq, const Disc& region,
                                           const PolyalgOptions& opts) {
  std::vector<CriticalPoint> out;
  for (const auto& c : all_critical_points(eq, opts)) {
    const double dist = std::abs(c.location - region.center);
    if (std::abs(dist - region.radius) <= opts.boundary_tol * (1.0 + region.radius))
      fail(ErrorCode::kRootOnBoundary, "critical point lies on the region boundary");
    if (dist < region.radius) out.push_back(c);
  }
  return out;
}

TrackResult track_roots(const AlgebroidEquation& eq, std::span<const cplx> path, const RootSet& start,
                        const TrackOptions& opts) {
  std::vector<cplx> obstacles;
  for (const auto& c : all_critical_points(eq, opts.polyalg)) obstacles.push_back(c.location);
  return track_roots(eq, path, start, opts, obstacles);
}

TrackResult track_roots(const AlgebroidEquation& eq, std::span<const cplx> path, const RootSet& start,
                        const TrackOptions& opts, std::span<const cplx> obstacles) {
  if (path.empty()) fail(ErrorCode::kInvalidArgument, "empty tracking path");
  if (start.infinite_count != 0 || start.size() != eq.nu())
    fail(ErrorCode::kPathTooClose, "start point carries roots at infinity (critical point)");
  for (std::size_t s = 0; s < path.size(); ++s) {
    const cplx a = path[s];
    const cplx b = s + 1 < path.size() ? path[s + 1] : path[s];
    for (const cplx c : obstacles)
      if (segment_distance(c, a, b) < opts.clearance)
        fail(ErrorCode::kPathTooClose, "path passes within the clearance of a critical point");
  }

  const ChartedEquation ce(eq);
  std::vector<cplx> roots = start.finite;
  std::vector<cplx> next(roots.size());
  TrackResult result;

  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const cplx a = path[s];
    const cplx b = path[s + 1];
    const double seg_len = std::abs(b - a);
    if (seg_len == 0.0) continue;
    double t = 0.0;
    double h = 1.0;
    while (t < 1.0) {
      h = std::min(h, 1.0 - t);
      const cplx z0 = a + t * (b - a);
      const cplx z1 = (t + h >= 1.0) ? b : a + (t + h) * (b - a);
      const double limit = opts.max_displacement_fraction * (roots.size() > 1 ? min_separation(roots) : 1.0);
      bool ok = true;
      for (std::size_t i = 0; i < roots.size() && ok; ++i) {
        ok = continue_root(ce, z0, z1, roots[i], opts.newton_iterations, next[i]) &&
             chordal_distance(roots[i], next[i]) < limit;
      }
      if (ok) {
        roots.swap(next);
        t += h;
        h *= 2.0;
        ++result.steps;
      } else {
        h *= 0.5;
        if (h * seg_len < 1e-13 * (1.0 + std::abs(z0)))
          fail(ErrorCode::kTrackingAmbiguous, "step size collapsed while continuing the roots");
      }
    }
  }

  const int nu = eq.nu();
  result.end.point = path.back();
  result.end.finite = roots;
  const bool closed = std::abs(path.back() - path.front()) <= 1e-12 * (1.0 + std::abs(path.front()));
  result.permutation.assign(static_cast<std::size_t>(nu), 0);
  if (closed) {
    for (int i = 0; i < nu; ++i) {
      double best = std::numeric_limits<double>::infinity(), second = best;
      int arg = -1;
      for (int j = 0; j < nu; ++j) {
        const double d = chordal_distance(roots[static_cast<std::size_t>(i)], start.finite[static_cast<std::size_t>(j)]);
        if (d < best) {
          second = best;
          best = d;
          arg = j;
        } else if (d < second) {
          second = d;
        }
      }
      if (nu > 1 && !(second >= 2.0 * best))
        fail(ErrorCode::kTrackingAmbiguous, "end roots cannot be matched unambiguously to the start roots");
      result.permutation[static_cast<std::size_t>(i)] = arg;
    }
    if (!is_permutation(result.permutation))
      fail(ErrorCode::kTrackingAmbiguous, "end-to-start matching is not a bijection");
  } else {
    std::vector<double> cost(static_cast<std::size_t>(nu * nu));
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nu; ++j)
        cost[static_cast<std::size_t>(i * nu + j)] =
            chordal_distance(roots[static_cast<std::size_t>(i)], start.finite[static_cast<std::size_t>(j)]);
    result.permutation = optimal_assignment(cost, nu);
  }
  return result;
}

std::vector<cplx> circle_path(cplx center, double radius, double start_angle, int samples, int turns) {
  const int n = samples * turns;
  std::vector<cplx> out(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    out[static_cast<std::size_t>(k)] = center + std::polar(radius, start_angle + 2.0 * kPi * k / samples);
  out.back() = out.front();
  return out;
}

std::vector<CriticalPoint> MonodromyCertificate::critical_points() const {
  std::vector<CriticalPoint> out;
  for (const auto& l : loops) out.push_back(l.point);
  return out;
}

std::vector<Permutation> MonodromyCertificate::permutations() const {
  std::vector<Permutation> out;
  for (const auto& l : loops) out.push_back(l.permutation);
  return out;
}

std::vector<int> MonodromyCertificate::branch_orders() const {
  std::vector<int> out;
  for (const auto& l : loops) out.push_back(l.branch_order);
  return out;
}

std::vector<std::pair<cplx, int>> MonodromyCertificate::branch_points() const {
  std::vector<std::pair<cplx, int>> out;
  for (const auto& l : loops)
    if (l.branch_order > 0) out.emplace_back(l.point.location, l.branch_order);
  return out;
}

namespace {

struct LoopGeometry {
  std::vector<double> radii;
  std::vector<cplx> entries;
  cplx inf_direction{};
  double inf_radius = 0.0;
  cplx inf_entry{};
};

// Lays out loops and corridors for a candidate basepoint; nullopt when a
// corridor runs through another loop's disc.
std::optional<LoopGeometry> plan_loops(const std::vector<CriticalPoint>& crit, const Disc& region, cplx base,
                                       const MonodromyOptions& opts) {
  const std::size_t n = crit.size();
  LoopGeometry g;
  g.radii.resize(n);
  g.entries.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx c = crit[k].location;
    double rho = std::min(opts.radius_cap, 0.5 * std::abs(base - c));
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) rho = std::min(rho, 0.5 * std::abs(crit[j].location - c));
    rho *= opts.radius_scale;
    if (rho < 100.0 * opts.track.clearance) return std::nullopt;
    g.radii[k] = rho;
    g.entries[k] = c + rho * (base - c) / std::abs(base - c);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (j != k && segment_distance(crit[j].location, base, g.entries[k]) < 1.2 * g.radii[j]) return std::nullopt;

  // Infinity corridor: bisector of the widest angular gap seen from base.
  std::vector<double> angles;
  for (const auto& c : crit) angles.push_back(std::arg(c.location - base));
  std::sort(angles.begin(), angles.end());
  double dir_angle = 0.0;
  if (!angles.empty()) {
    double best_gap = -1.0;
    for (std::size_t k = 0; k < angles.size(); ++k) {
      const double a0 = angles[k];
      const double a1 = (k + 1 < angles.size()) ? angles[k + 1] : angles.front() + 2.0 * kPi;
      if (a1 - a0 > best_gap) {
        best_gap = a1 - a0;
        dir_angle = a0 + 0.5 * (a1 - a0);
      }
    }
  }
  g.inf_direction = std::polar(1.0, dir_angle);
  g.inf_radius = 1.5 * region.radius + std::abs(base - region.center);
  // Solve |base + t d - center| = R for t > 0.
  const cplx p = base - region.center;
  const double bq = (p * std::conj(g.inf_direction)).real();
  const double cq = std::norm(p) - g.inf_radius * g.inf_radius;
  const double t = -bq + std::sqrt(bq * bq - cq);
  g.inf_entry = base + t * g.inf_direction;
  for (std::size_t j = 0; j < n; ++j)
    if (segment_distance(crit[j].location, base, g.inf_entry) < 1.2 * g.radii[j]) return std::nullopt;
  return g;
}

MonodromyCertificate run_monodromy(const AlgebroidEquation& eq, const Disc& region, std::optional<cplx> basepoint,
                                   std::uint64_t seed, const MonodromyOptions& opts_in) {
  MonodromyOptions opts = opts_in;
  opts.track.polyalg.solver.seed = seed;
  const auto crit_all = all_critical_points(eq, opts.track.polyalg);
  for (const auto& c : crit_all)
    if (!region.contains(c.location))
      fail(ErrorCode::kInvalidArgument, "a critical point lies outside the monodromy region");
  for (std::size_t i = 0; i < crit_all.size(); ++i)
    for (std::size_t j = i + 1; j < crit_all.size(); ++j)
      if (std::abs(crit_all[i].location - crit_all[j].location) < 1e3 * opts.track.clearance)
        fail(ErrorCode::kCriticalPointsTooClose, "two critical points are closer than the tracking resolution");

  std::vector<cplx> obstacles;
  for (const auto& c : crit_all) obstacles.push_back(c.location);

  std::optional<LoopGeometry> geom;
  cplx base{};
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const int attempts = basepoint ? 1 : opts.basepoint_attempts;
  for (int k = 0; k < attempts && !geom; ++k) {
    base = basepoint ? *basepoint
                     : region.center + region.radius * (0.5 + 0.013 * k) * std::polar(1.0, 0.3 + golden * (k + 1));
    bool near = false;
    for (const cplx c : obstacles) near = near || std::abs(base - c) < 200.0 * opts.track.clearance;
    if (!near) geom = plan_loops(crit_all, region, base, opts);
  }
  if (!geom) fail(ErrorCode::kCriticalPointsTooClose, "no basepoint admits disjoint loop corridors");

  MonodromyCertificate cert;
  cert.basepoint = base;
  const RootSet base_roots = roots_at(eq, base, opts.track.polyalg);
  cert.base_roots = base_roots.finite;
  cert.infinity_direction = geom->inf_direction;
  cert.infinity_radius = geom->inf_radius;

  const int nu = eq.nu();
  auto run_loop = [&](std::size_t k) {
    MonodromyLoop loop;
    loop.point = crit_all[k];
    loop.radius = geom->radii[k];
    loop.entry_point = geom->entries[k];
    const std::vector<cplx> corridor{base, loop.entry_point};
    const TrackResult in = track_roots(eq, corridor, base_roots, opts.track, obstacles);
    loop.entry_roots = in.end.finite;
    const double start_angle = std::arg(loop.entry_point - loop.point.location);
    const auto circle = circle_path(loop.point.location, loop.radius, start_angle, opts.circle_samples);
    RootSet entry;
    entry.point = loop.entry_point;
    entry.finite = loop.entry_roots;
    loop.permutation = track_roots(eq, circle, entry, opts.track, obstacles).permutation;
    loop.cycle_type = cycle_type(loop.permutation);
    loop.branch_order = nu - static_cast<int>(loop.cycle_type.size());
    return loop;
  };

  const std::size_t n = crit_all.size();
  std::vector<MonodromyLoop> loops(n);
  if (opts.parallel && n > 1) {
    std::vector<std::future<MonodromyLoop>> jobs;
    for (std::size_t k = 0; k < n; ++k) jobs.push_back(std::async(std::launch::async, run_loop, k));
    for (std::size_t k = 0; k < n; ++k) loops[k] = jobs[k].get();
  } else {
    for (std::size_t k = 0; k < n; ++k) loops[k] = run_loop(k);
  }

  // Fixed convention: counterclockwise from the infinity corridor.
  const double dir = std::arg(geom->inf_direction);
  auto key = [&](const MonodromyLoop& l) {
    return std::fmod(std::arg(l.point.location - base) - dir + 4.0 * kPi, 2.0 * kPi);
  };
  std::stable_sort(loops.begin(), loops.end(),
                   [&](const MonodromyLoop& a, const MonodromyLoop& b) { return key(a) < key(b); });
  cert.loops = std::move(loops);

  {
    const std::vector<cplx> corridor{base, geom->inf_entry};
    const TrackResult out = track_roots(eq, corridor, base_roots, opts.track, obstacles);
    RootSet entry;
    entry.point = geom->inf_entry;
    entry.finite = out.end.finite;
    const auto circle = circle_path(region.center, geom->inf_radius, std::arg(geom->inf_entry - region.center),
                                    std::max(opts.circle_samples, 256));
    const Permutation ccw = track_roots(eq, circle, entry, opts.track, obstacles).permutation;
    cert.infinity_permutation = inverse(ccw);
  }

  Permutation product = identity_permutation(nu);
  for (const auto& l : cert.loops) product = compose(product, l.permutation);
  cert.product_consistent = is_identity(compose(product, cert.infinity_permutation));

  const auto perms = cert.permutations();
  cert.transitive = generates_transitive(perms, nu);
  return cert;
}

}  // namespace

MonodromyCertificate monodromy(const AlgebroidEquation& eq, const Disc& region, std::uint64_t seed,
                               const MonodromyOptions& opts) {
  return run_monodromy(eq, region, std::nullopt, seed, opts);
}

MonodromyCertificate monodromy(const AlgebroidEquation& eq, const Disc& region, cplx basepoint,
                               std::uint64_t seed, const MonodromyOptions& opts) {
  return run_monodromy(eq, region, basepoint, seed, opts);
}

void apply_irreducibility(AlgebroidEquation& eq, const MonodromyCertificate& cert) {
  eq.set_irreducibility(cert.transitive ? Irreducibility::kCertified : Irreducibility::kRefuted);
}

SheetCycle sheet_cycle(const MonodromyCertificate& cert, std::size_t loop_index, std::size_t cycle_index) {
  if (loop_index >= cert.loops.size()) fail(ErrorCode::kInvalidArgument, "loop index out of range");
  const auto& loop = cert.loops[loop_index];
  const auto all = cycles(loop.permutation);
  if (cycle_index >= all.size()) fail(ErrorCode::kInvalidArgument, "cycle index out of range");
  const auto& cyc = all[cycle_index];
  SheetCycle sc;
  sc.start_point = loop.entry_point;
  for (const int i : cyc) sc.start_roots.push_back(loop.entry_roots.at(static_cast<std::size_t>(i)));
  return sc;
}

}  // namespace algebroid
