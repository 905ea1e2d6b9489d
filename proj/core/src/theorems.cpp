#include "algebroid/theorems.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

#include "algebroid/errors.hpp"
#include "algebroid/quadrature.hpp"

namespace algebroid {

namespace {

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

double characteristic_value(const AlgebroidEquation& eq, const DomainModel& dom, double r, const NevanOptions& o) {
  const SpherePoint inf = SpherePoint::at_infinity();
  try {
    return proximity(eq, dom, inf, r, o) + counting(eq, dom, inf, r, false, o);
  } catch (const Error& e) {
    throw with_context(e, "r = " + std::to_string(r));
  }
}

// Growth term of the error bound: log r on the plane, r on the disc.
double growth_feature(const DomainModel& dom, double r) {
  return dom.kind() == DomainKind::kEuclidean ? std::log(r) : r;
}

std::size_t calibration_rows(std::size_t n, double fraction) {
  const auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  return std::clamp<std::size_t>(k, 1, n);
}

void finish_ledger(TheoremLedger& ledger, double max_fraction, bool all_rows) {
  std::size_t verdict_rows = 0, failed = 0;
  bool all_pass = true;
  for (const auto& row : ledger.rows) {
    all_pass = all_pass && row.pass;
    if (row.calibration) continue;
    ++verdict_rows;
    if (!row.pass) ++failed;
  }
  ledger.exceptional_fraction = verdict_rows ? static_cast<double>(failed) / verdict_rows : 0.0;
  ledger.verdict = all_rows ? all_pass : ledger.exceptional_fraction <= max_fraction;
}

// Calibrated upper-bound ledger: target_i <= base_i + k . features_i.
TheoremLedger bound_ledger(std::string id, const std::vector<double>& r_grid, const std::vector<double>& lhs,
                           const std::vector<double>& base, const std::vector<std::vector<double>>& features,
                           const TheoremOptions& opts) {
  const std::size_t n = r_grid.size();
  const std::size_t prefix = calibration_rows(n, opts.calibration_fraction);
  std::vector<std::vector<double>> cal_f(features.begin(), features.begin() + static_cast<std::ptrdiff_t>(prefix));
  std::vector<double> cal_t(prefix);
  for (std::size_t i = 0; i < prefix; ++i) cal_t[i] = lhs[i] - base[i];
  TheoremLedger ledger;
  ledger.id = std::move(id);
  ledger.constants = calibrate_upper_bound(cal_f, cal_t);
  for (std::size_t i = 0; i < n; ++i) {
    LedgerRow row;
    row.r = r_grid[i];
    row.lhs = lhs[i];
    row.rhs = base[i];
    for (std::size_t c = 0; c < ledger.constants.size(); ++c) row.rhs += ledger.constants[c] * features[i][c];
    row.margin = row.rhs - row.lhs;
    row.pass = row.margin >= -1e-12 * (1.0 + std::abs(row.lhs));
    row.calibration = i < prefix;
    ledger.rows.push_back(row);
  }
  finish_ledger(ledger, opts.max_exceptional_fraction, false);
  return ledger;
}

}  // namespace

std::vector<double> calibrate_upper_bound(const std::vector<std::vector<double>>& features,
                                          const std::vector<double>& target) {
  const std::size_t n = features.size();
  if (n == 0 || n != target.size()) fail(ErrorCode::kInvalidArgument, "calibration needs matching nonempty rows");
  const std::size_t p = features.front().size();
  if (p == 0) fail(ErrorCode::kInvalidArgument, "calibration needs at least the intercept column");
  const std::size_t slopes = p - 1;

  std::vector<double> best(p, 0.0);
  double best_res = std::numeric_limits<double>::infinity();
  // Every constant, the intercept included, is kept nonnegative: a free
  // intercept lets nearly collinear columns cancel with huge weights.
  for (unsigned mask = 1; mask < (1u << p); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < p; ++c)
      if (mask & (1u << c)) cols.push_back(c);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols.size()));
    Eigen::VectorXd b(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = features[i][cols[j]];
      b(static_cast<Eigen::Index>(i)) = target[i];
    }
    const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    bool feasible = true;
    for (std::size_t j = 0; j < cols.size(); ++j) feasible = feasible && x(static_cast<Eigen::Index>(j)) >= 0.0;
    if (!feasible) continue;
    const double res = (a * x - b).squaredNorm();
    if (res < best_res - 1e-15 * (1.0 + res)) {
      best_res = res;
      std::fill(best.begin(), best.end(), 0.0);
      for (std::size_t j = 0; j < cols.size(); ++j) best[cols[j]] = x(static_cast<Eigen::Index>(j));
    }
  }
  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t c = 0; c < p; ++c) fit += best[c] * features[i][c];
    shift = std::max(shift, target[i] - fit);
  }
  best[slopes] += shift;
  return best;
}

TheoremLedger fmt_residual(const AlgebroidEquation& eq, const DomainModel& dom, cplx a,
                           const std::vector<double>& r_grid, const TheoremOptions& opts) {
  const cplx o = dom.reference();
  const cplx an = eq.leading()(o);
  if (std::abs(an) <= 1e-14 * (1.0 + eq.leading().magnitude_at(o)))
    fail(ErrorCode::kValueAtReference, "w has a pole at the reference point");
  double scale = 0.0;
  for (int j = 0; j <= eq.nu(); ++j) scale += std::abs(eq.A(j)(o)) * std::pow(std::abs(a), j);
  const cplx psi = eval_psi(eq, o, a);
  if (std::abs(psi) <= 1e-12 * scale) fail(ErrorCode::kValueAtReference, "w takes the value a at the reference point");

  const AlgebroidEquation inv = inverted_shift(eq, a);
  const double correction = std::log(std::abs(psi) / std::abs(an)) / eq.nu();
  const double bound = log_plus(std::abs(a)) + std::log(2.0);

  TheoremLedger ledger;
  ledger.id = "fmt";
  ledger.constants = {correction, bound};
  ledger.rows.resize(r_grid.size());
  parallel_for(r_grid.size(), opts.nevan.parallel, [&](std::size_t i) {
    const double r = r_grid[i];
    const double t_w = characteristic_value(eq, dom, r, opts.nevan);
    const double t_inv = characteristic_value(inv, dom, r, opts.nevan);
    LedgerRow& row = ledger.rows[i];
    row.r = r;
    row.lhs = std::abs(t_inv - t_w + correction);
    row.rhs = bound + opts.fmt_epsilon;
    row.margin = row.rhs - row.lhs;
    row.pass = row.margin >= 0.0;
  });
  finish_ledger(ledger, opts.max_exceptional_fraction, true);
  return ledger;
}

TheoremLedger branch_divisor_bound(const AlgebroidEquation& eq, const DomainModel& dom,
                                   const std::vector<double>& r_grid, const BranchDivisor& bran,
                                   const TheoremOptions& opts) {
  if (r_grid.empty()) fail(ErrorCode::kInvalidArgument, "empty r grid");
  const std::size_t n = r_grid.size();
  std::vector<double> t(n), nb(n);
  parallel_for(n, opts.nevan.parallel, [&](std::size_t i) {
    t[i] = characteristic_value(eq, dom, r_grid[i], opts.nevan);
    nb[i] = branch_counting(bran, eq.nu(), dom, r_grid[i], opts.nevan);
  });
  const double factor = 2.0 * eq.nu() - 2.0;
  TheoremLedger ledger;
  ledger.id = "bran";
  ledger.diagnostic_name = "slack";
  const double c = nb[0] - factor * t[0];
  ledger.constants = {c};
  for (std::size_t i = 0; i < n; ++i) {
    LedgerRow row;
    row.r = r_grid[i];
    row.lhs = nb[i];
    row.rhs = factor * t[i] + c;
    row.margin = row.rhs - row.lhs;
    row.pass = row.margin >= -opts.bran_epsilon;
    row.calibration = i == 0;
    ledger.rows.push_back(row);
    ledger.diagnostic.push_back(factor * t[i] - nb[i]);
  }
  finish_ledger(ledger, opts.max_exceptional_fraction, true);
  return ledger;
}

TheoremLedger branch_divisor_bound(const AlgebroidEquation& eq, const DomainModel& dom,
                                   const std::vector<double>& r_grid, const TheoremOptions& opts) {
  const BranchDivisor bran = branch_divisor(eq, opts.seed, opts.monodromy);
  return branch_divisor_bound(eq, dom, r_grid, bran, opts);
}

TheoremLedger smt_from_samples(int nu, const DomainModel& dom, const std::vector<NevanlinnaSample>& samples,
                               const TheoremOptions& opts) {
  if (samples.empty()) fail(ErrorCode::kInvalidArgument, "empty r grid");
  const int q = static_cast<int>(samples.front().values.size());
  std::vector<double> r, lhs, base, trend;
  std::vector<std::vector<double>> features;
  for (const auto& s : samples) {
    double nbar = 0.0;
    for (const auto& v : s.values) nbar += v.Nbar;
    r.push_back(s.r);
    lhs.push_back((q - 2.0 * nu) * s.T + s.T_ricci);
    base.push_back(nbar);
    features.push_back({log_plus(s.T), growth_feature(dom, s.r), 1.0});
    trend.push_back(s.T > 0.0 ? -s.T_ricci / s.T : 0.0);
  }
  TheoremLedger ledger = bound_ledger("smt", r, lhs, base, features, opts);
  ledger.diagnostic = std::move(trend);
  ledger.diagnostic_name = "growth_trend";
  return ledger;
}

TheoremLedger smt_check(const AlgebroidEquation& eq, const DomainModel& dom, const std::vector<SpherePoint>& values,
                        const std::vector<double>& r_grid, const TheoremOptions& opts) {
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j]) fail(ErrorCode::kInvalidArgument, "SMT target values must be distinct");
  const auto samples = characteristic_curve(eq, dom, r_grid, values, nullptr, opts.nevan);
  return smt_from_samples(eq.nu(), dom, samples, opts);
}

DefectRelation defect_relation_from_samples(int nu, const std::vector<NevanlinnaSample>& samples,
                                            const TheoremOptions& opts) {
  DefectRelation rel;
  rel.bound = 2.0 * nu;
  if (samples.empty()) fail(ErrorCode::kInvalidArgument, "empty r grid");
  std::vector<double> r, t;
  for (const auto& s : samples) {
    r.push_back(s.r);
    t.push_back(s.T);
  }
  for (std::size_t j = 0; j < samples.front().values.size(); ++j) {
    std::vector<double> nbar;
    for (const auto& s : samples) nbar.push_back(s.values[j].Nbar);
    rel.defects.push_back(defect_from_series(samples.front().values[j].a, r, nbar, t));
    rel.sum += rel.defects.back().simple_defect;
  }
  rel.verdict = rel.sum <= rel.bound + opts.defect_epsilon;
  return rel;
}

DefectRelation defect_relation(const AlgebroidEquation& eq, const DomainModel& dom,
                               const std::vector<SpherePoint>& values, const std::vector<double>& r_grid,
                               const TheoremOptions& opts) {
  const auto samples = characteristic_curve(eq, dom, r_grid, values, nullptr, opts.nevan);
  return defect_relation_from_samples(eq.nu(), samples, opts);
}

double log_derivative_proximity(const AlgebroidEquation& eq, const DomainModel& dom, double r,
                                const NevanOptions& opts) {
  if (eq.nu() != 1) fail(ErrorCode::kInvalidArgument, "the logarithmic derivative check needs nu = 1");
  const CPoly& a0 = eq.A(0);
  const CPoly& a1 = eq.A(1);
  const CPoly num = (a0.derivative() * a1 - a0 * a1.derivative()).trimmed(1e-14);
  if (num.is_zero() || a0.is_zero()) return 0.0;
  const CPoly den = a0 * a1;
  const double s = dom.boundary_radius(r);
  std::vector<cplx> danger;
  for (const auto& e : polynomial_divisor(den, opts.polyalg).entries)
    if (std::abs(std::abs(e.location) - s) < 1e-6 * (1.0 + s)) danger.push_back(e.location);
  const double tol = opts.node_tol * (1.0 + s);
  const double jitter = 0.381966 * std::numbers::pi / opts.n_theta;
  auto f = [&](double theta) -> PiecewiseSample {
    auto hit = [&](double t) {
      for (const cplx c : danger)
        if (std::abs(std::polar(s, t) - c) < tol) return true;
      return false;
    };
    if (hit(theta)) {
      theta += jitter;
      if (hit(theta)) fail(ErrorCode::kBoundaryHitsCritical, "quadrature node coincides with a zero or pole");
    }
    const cplx z = std::polar(s, theta);
    const double q = std::abs(num(z) / den(z));
    return {log_plus(q) * dom.poisson_weight(theta, r), q > 1.0 ? 1 : 0};
  };
  return periodic_mean(f, opts.n_theta);
}

TheoremLedger ldl_check(const AlgebroidEquation& eq, const DomainModel& dom, const std::vector<double>& r_grid,
                        const TheoremOptions& opts) {
  if (r_grid.empty()) fail(ErrorCode::kInvalidArgument, "empty r grid");
  const std::size_t n = r_grid.size();
  std::vector<double> m(n), t(n);
  parallel_for(n, opts.nevan.parallel, [&](std::size_t i) {
    m[i] = log_derivative_proximity(eq, dom, r_grid[i], opts.nevan);
    t[i] = characteristic_value(eq, dom, r_grid[i], opts.nevan);
  });
  std::vector<std::vector<double>> features;
  for (std::size_t i = 0; i < n; ++i) features.push_back({log_plus(t[i]), growth_feature(dom, r_grid[i]), 1.0});
  return bound_ledger("ldl", r_grid, m, std::vector<double>(n, 0.0), features, opts);
}

}  // namespace algebroid
