#include "algebroid/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "algebroid/errors.hpp"

namespace algebroid {

AlgebroidEquation::AlgebroidEquation(std::vector<CPoly> coefficients, std::string label)
    : coeffs_(std::move(coefficients)), label_(std::move(label)) {
  if (coeffs_.size() < 2) fail(ErrorCode::kInvalidArgument, "an algebroid equation needs nu >= 1");
  if (coeffs_.back().is_zero()) fail(ErrorCode::kInvalidArgument, "leading coefficient A_nu is identically zero");

  // Common factor test: a shared zero must be a zero of the lowest-degree
  // nonzero coefficient.
  const CPoly* probe = nullptr;
  for (const auto& a : coeffs_) {
    if (a.is_zero()) continue;
    if (probe == nullptr || a.degree() < probe->degree()) probe = &a;
  }
  if (probe->degree() == 0) return;
  for (const cplx r : solve_roots(*probe)) {
    bool all_vanish = true;
    for (const auto& a : coeffs_) {
      if (a.is_zero()) continue;
      if (std::abs(a(r)) > 1e-8 * std::max(a.magnitude_at(r), 1e-300)) {
        all_vanish = false;
        break;
      }
    }
    if (all_vanish)
      fail(ErrorCode::kInvalidArgument, "coefficients share a common zero near z = (" + std::to_string(r.real()) +
                                            ", " + std::to_string(r.imag()) + ")");
  }
}

std::vector<cplx> AlgebroidEquation::coefficients_at(cplx z) const {
  std::vector<cplx> v(coeffs_.size());
  for (std::size_t j = 0; j < coeffs_.size(); ++j) v[j] = coeffs_[j](z);
  return v;
}

int AlgebroidEquation::z_degree() const {
  int d = 0;
  for (const auto& a : coeffs_) d = std::max(d, a.degree());
  return d;
}

std::vector<SpherePoint> RootSet::as_sphere_points() const {
  std::vector<SpherePoint> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (const cplx w : finite) out.push_back(SpherePoint::finite(w));
  for (int k = 0; k < infinite_count; ++k) out.push_back(SpherePoint::at_infinity());
  return out;
}

int Divisor1D::degree() const {
  int d = 0;
  for (const auto& e : entries) d += e.multiplicity;
  return d;
}

cplx eval_psi(const AlgebroidEquation& eq, cplx z, cplx w) {
  CompensatedSum sum;
  cplx wp = 1.0;
  for (int j = 0; j <= eq.nu(); ++j) {
    sum.add(eq.A(j)(z) * wp);
    wp *= w;
  }
  return sum.value();
}

RootSet roots_at(const AlgebroidEquation& eq, cplx z, const PolyalgOptions& opts) {
  std::vector<cplx> vals = eq.coefficients_at(z);
  double maxabs = 0.0;
  for (const cplx v : vals) maxabs = std::max(maxabs, std::abs(v));
  if (maxabs == 0.0) fail(ErrorCode::kInvalidArgument, "all coefficients vanish at the requested point");
  int d = eq.nu();
  // A coefficient counts as vanishing only when its value is lost in its
  // own rounding error; comparing against the other coefficients would
  // send genuinely large roots to infinity.
  while (d > 0 && std::abs(vals[static_cast<std::size_t>(d)]) <= opts.degree_drop_tol * eq.A(d).magnitude_at(z)) --d;
  vals.resize(static_cast<std::size_t>(d) + 1);
  RootSet out;
  out.point = z;
  out.infinite_count = eq.nu() - d;
  if (d > 0) out.finite = solve_roots(CPoly(vals), opts.solver);
  return out;
}

namespace {

cplx ipow(cplx base, int exponent) {
  cplx r = 1.0;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

using PolyMatrix = std::vector<std::vector<CPoly>>;

// Laplace expansion along rows with memoization on the set of used columns.
CPoly laplace_det(const PolyMatrix& m) {
  const int n = static_cast<int>(m.size());
  std::map<unsigned, CPoly> memo;
  auto rec = [&](auto&& self, int row, unsigned used) -> CPoly {
    if (row == n) return CPoly::constant(1.0);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    CPoly acc;
    int sign_pos = 0;
    for (int c = 0; c < n; ++c) {
      if (used & (1u << c)) continue;
      const CPoly& entry = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
      if (!entry.is_zero()) {
        CPoly term = entry * self(self, row + 1, used | (1u << c));
        if (sign_pos % 2 == 0)
          acc += term;
        else
          acc -= term;
      }
      ++sign_pos;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(rec, 0, 0u);
}

// Fraction-free (Bareiss) elimination; divisions are exact in theory and
// the floating remainder is dropped.
CPoly bareiss_det(PolyMatrix m) {
  const std::size_t n = m.size();
  double sign = 1.0;
  CPoly prev = CPoly::constant(1.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {};
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        CPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = divmod(num, prev).quotient;
      }
      m[i][k] = CPoly{};
    }
    prev = m[k][k];
  }
  return m[n - 1][n - 1] * cplx(sign);
}

}  // namespace

CPoly sylvester_resultant(const AlgebroidEquation& eq) {
  const int nu = eq.nu();
  if (nu == 1) return eq.A(1);
  const int size = 2 * nu - 1;
  PolyMatrix m(static_cast<std::size_t>(size), std::vector<CPoly>(static_cast<std::size_t>(size)));
  // nu - 1 rows of A_nu ... A_0.
  for (int r = 0; r < nu - 1; ++r)
    for (int k = 0; k <= nu; ++k) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = eq.A(nu - k);
  // nu rows of B_nu ... B_1 with B_j = j A_j.
  for (int r = 0; r < nu; ++r)
    for (int k = 0; k < nu; ++k)
      m[static_cast<std::size_t>(nu - 1 + r)][static_cast<std::size_t>(r + k)] =
          eq.A(nu - k) * cplx(static_cast<double>(nu - k));
  return nu <= 4 ? laplace_det(m) : bareiss_det(std::move(m));
}

CPoly discriminant(const AlgebroidEquation& eq, const PolyalgOptions& opts) {
  const int nu = eq.nu();
  const CPoly r = sylvester_resultant(eq);
  const auto [q, rem] = divmod(r, eq.leading());
  if (rem.norm_inf() > opts.division_tol * std::max(r.norm_inf(), 1e-300))
    fail(ErrorCode::kInexactDivision, "resultant is not divisible by A_nu");
  const double sign = ((nu * (nu - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return q * cplx(sign);
}

std::vector<cplx> vieta_products(const AlgebroidEquation& eq, cplx z) {
  const std::vector<cplx> vals = eq.coefficients_at(z);
  double maxabs = 0.0;
  for (const cplx v : vals) maxabs = std::max(maxabs, std::abs(v));
  const cplx lead = vals.back();
  if (std::abs(lead) <= 1e-14 * maxabs) fail(ErrorCode::kPoleAtPoint, "A_nu vanishes at the requested point");
  const int nu = eq.nu();
  std::vector<cplx> e(static_cast<std::size_t>(nu));
  for (int k = 1; k <= nu; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    e[static_cast<std::size_t>(k - 1)] = sign * vals[static_cast<std::size_t>(nu - k)] / lead;
  }
  return e;
}

std::vector<Cluster> cluster_roots(const CPoly& p, std::span<const cplx> roots, const PolyalgOptions& opts) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> group(n);
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](std::size_t i) {
    while (group[i] != i) i = group[i] = group[group[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = 1.0 + std::max(std::abs(roots[i]), std::abs(roots[j]));
      if (std::abs(roots[i] - roots[j]) < opts.multiple_root_radius * scale) group[find(i)] = find(j);
    }
  std::vector<Cluster> out;
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<cplx> members;
    for (std::size_t i = 0; i < n; ++i)
      if (find(i) == g) members.push_back(roots[i]);
    if (members.empty()) continue;
    const int m = static_cast<int>(members.size());
    if (m == 1) {
      out.push_back({members.front(), 1});
      continue;
    }
    cplx c = std::accumulate(members.begin(), members.end(), cplx(0.0)) / static_cast<double>(m);
    const cplx mean = c;
    std::vector<CPoly> derivs{p};
    for (int k = 1; k < m; ++k) derivs.push_back(derivs.back().derivative());
    for (int it = 0; it < 30; ++it) {
      const auto [q, dq] = derivs.back().eval_with_derivative(c);
      if (dq == cplx(0.0)) break;
      const cplx step = q / dq;
      c -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(c))) break;
    }
    bool multiple = std::abs(c - mean) < opts.multiple_root_radius * (1.0 + std::abs(mean));
    for (int k = 0; k + 1 < m && multiple; ++k) {
      const CPoly& d = derivs[static_cast<std::size_t>(k)];
      multiple = std::abs(d(c)) <= opts.multiple_root_tol * d.magnitude_at(c);
    }
    if (multiple) {
      out.push_back({c, m});
    } else {
      for (const auto& cl : cluster_points(members, opts.cluster_tol)) out.push_back(cl);
    }
  }
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return out;
}

Divisor1D polynomial_divisor(const CPoly& p, const PolyalgOptions& opts) {
  Divisor1D d;
  if (p.degree() == 0) return d;
  const auto roots = solve_roots(p, opts.solver);
  for (const auto& c : cluster_roots(p, roots, opts)) d.entries.push_back({c.center, c.multiplicity});
  return d;
}

namespace {

Divisor1D restrict_to(const Divisor1D& all, const Disc& region, const PolyalgOptions& opts) {
  Divisor1D out;
  for (const auto& e : all.entries) {
    const double dist = std::abs(e.location - region.center);
    if (std::abs(dist - region.radius) <= opts.boundary_tol * (1.0 + region.radius))
      fail(ErrorCode::kRootOnBoundary, "divisor point lies on the region boundary");
    if (dist < region.radius) out.entries.push_back(e);
  }
  return out;
}

}  // namespace

Divisor1D pole_divisor(const AlgebroidEquation& eq, const Disc& region, const PolyalgOptions& opts) {
  return restrict_to(polynomial_divisor(eq.leading(), opts), region, opts);
}

CPoly value_polynomial(const AlgebroidEquation& eq, cplx a) {
  CPoly acc;
  for (int j = eq.nu(); j >= 0; --j) acc = acc * CPoly::constant(a) + eq.A(j);
  return acc;
}

Divisor1D zero_divisor(const AlgebroidEquation& eq, const SpherePoint& a, const Disc& region,
                       const PolyalgOptions& opts) {
  if (a.infinite) return pole_divisor(eq, region, opts);
  const CPoly b0 = value_polynomial(eq, a.value);
  double scale = 0.0;
  for (const auto& c : eq.coefficients()) scale = std::max(scale, c.norm_inf());
  if (b0.norm_inf() <= 1e-13 * scale * std::max(1.0, std::pow(std::abs(a.value), static_cast<double>(eq.nu()))))
    fail(ErrorCode::kIdenticallyZero, "psi(z, a) vanishes identically");
  return restrict_to(polynomial_divisor(b0, opts), region, opts);
}

std::vector<CPoly> shifted_coefficients(const AlgebroidEquation& eq, cplx a) {
  const int nu = eq.nu();
  std::vector<CPoly> b(static_cast<std::size_t>(nu) + 1);
  for (int k = 0; k <= nu; ++k) {
    CPoly acc;
    for (int j = 0; j <= nu - k; ++j) {
      // binom(nu - j, k) a^{nu - k - j} A_{nu - j}
      double binom = 1.0;
      for (int t = 1; t <= k; ++t) binom = binom * (nu - j - k + t) / t;
      acc += eq.A(nu - j) * (binom * ipow(a, nu - k - j));
    }
    b[static_cast<std::size_t>(k)] = acc;
  }
  return b;
}

AlgebroidEquation inverted_shift(const AlgebroidEquation& eq, cplx a) {
  std::vector<CPoly> b = shifted_coefficients(eq, a);
  if (b.front().is_zero()) fail(ErrorCode::kIdenticallyZero, "psi(z, a) vanishes identically");
  std::reverse(b.begin(), b.end());
  return AlgebroidEquation(std::move(b), eq.label() + " [1/(w-a)]");
}

std::vector<cplx> reduce(const std::vector<SpherePoint>& points) {
  const std::size_t nu = points.size();
  CPoly prod = CPoly::constant(1.0);
  for (const auto& p : points)
    if (!p.infinite) prod *= CPoly::linear(p.value);
  std::vector<cplx> coeffs(nu + 1, 0.0);
  for (int k = 0; k <= prod.degree(); ++k) coeffs[static_cast<std::size_t>(k)] = prod[k];
  std::size_t imax = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (std::abs(coeffs[k]) > std::abs(coeffs[imax])) imax = k;
  const cplx pivot = coeffs[imax];
  for (auto& c : coeffs) c /= pivot;
  coeffs[imax] = 1.0;
  return coeffs;
}

std::vector<SpherePoint> decompose(const std::vector<cplx>& coeffs, const PolyalgOptions& opts) {
  double maxabs = 0.0;
  for (const cplx c : coeffs) maxabs = std::max(maxabs, std::abs(c));
  if (coeffs.empty() || maxabs == 0.0) fail(ErrorCode::kInvalidArgument, "all projective coefficients vanish");
  const int nu = static_cast<int>(coeffs.size()) - 1;
  int d = nu;
  while (d > 0 && std::abs(coeffs[static_cast<std::size_t>(d)]) <= 1e-12 * maxabs) --d;
  std::vector<SpherePoint> out;
  if (d > 0) {
    const std::vector<cplx> head(coeffs.begin(), coeffs.begin() + d + 1);
    for (const cplx r : solve_roots(CPoly(head), opts.solver)) out.push_back(SpherePoint::finite(r));
  }
  for (int k = d; k < nu; ++k) out.push_back(SpherePoint::at_infinity());
  return out;
}

double multiset_distance(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(a.size());
  std::vector<double> cost(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cost[static_cast<std::size_t>(i * n + j)] =
          chordal_distance(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
  const auto assign = optimal_assignment(cost, n);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, cost[static_cast<std::size_t>(i * n + assign[static_cast<std::size_t>(i)])]);
  return worst;
}

}  // namespace algebroid
