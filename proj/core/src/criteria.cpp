#include <algorithm>
#include <cmath>
#include <numbers>

#include "algebroid/errors.hpp"
#include "algebroid/theorems.hpp"

namespace algebroid {

namespace {

void validate(const CriterionInput& in) {
  if (in.k.empty()) fail(ErrorCode::kInvalidArgument, "at least one shared value is required");
  for (const auto& k : in.k)
    if (k && *k < 1) fail(ErrorCode::kInvalidArgument, "truncation levels must be positive");
  if (in.mu < 1 || in.nu < 1 || in.varsigma < 1) fail(ErrorCode::kInvalidArgument, "sheet counts must be positive");
  for (const int s : in.sheet_counts)
    if (s < 1) fail(ErrorCode::kInvalidArgument, "sheet counts must be positive");
}

Rational sum_ratios(const CriterionInput& in) {
  Rational s = 0;
  for (const auto& k : in.k) s += level_ratio(k);
  return s;
}

Rational sum_reciprocals(const CriterionInput& in) {
  Rational s = 0;
  for (const auto& k : in.k) s += level_reciprocal(k);
  return s;
}

}  // namespace

Level CriterionInput::k0() const {
  Level best = 0;
  for (const auto& level : k) {
    if (!level) return std::nullopt;
    best = std::max(*best, *level);
  }
  return best;
}

int CriterionInput::nu0() const {
  return sheet_counts.empty() ? 0 : *std::max_element(sheet_counts.begin(), sheet_counts.end());
}

Rational level_ratio(const Level& k) { return k ? Rational(*k, *k + 1) : Rational(1); }

Rational level_reciprocal(const Level& k) { return k ? Rational(1, *k + 1) : Rational(0); }

Rational dependence_gamma(const CriterionInput& in) {
  validate(in);
  if (in.sheet_counts.empty()) fail(ErrorCode::kInvalidArgument, "dependence needs the sheet counts nu_1..nu_l");
  long long prod = 1;
  Rational inv_sum = 0;
  for (const int s : in.sheet_counts) {
    prod *= s;
    inv_sum += Rational(1, s);
  }
  return sum_ratios(in) - level_ratio(in.k0()) * Rational(prod) * inv_sum - Rational(2LL * in.nu0());
}

Rational dependence_gamma0(const CriterionInput& in) {
  validate(in);
  const Rational s(in.varsigma);
  return sum_ratios(in) - Rational(2) * level_ratio(in.k0()) * s - Rational(2) * s;
}

std::pair<Rational, Rational> uniqueness_margins(const CriterionInput& in) {
  validate(in);
  const Rational q(in.q());
  const Rational ratio0 = level_ratio(in.k0());
  const Rational recip = sum_reciprocals(in);
  return {q - Rational(2LL * in.mu) - Rational(2LL * in.nu) * ratio0 - recip,
          q - Rational(2LL * in.nu) - Rational(2LL * in.mu) * ratio0 - recip};
}

std::pair<bool, bool> uniqueness_condition(const CriterionInput& in) {
  const auto [first, second] = uniqueness_margins(in);
  return {first > 0, second > 0};
}

std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

namespace {

std::vector<cplx> truncated_support(const AlgebroidEquation& eq, const SpherePoint& a, const Disc& disc,
                                    const Level& level, const PolyalgOptions& opts) {
  const Divisor1D d = a.infinite ? pole_divisor(eq, disc, opts) : zero_divisor(eq, a, disc, opts);
  std::vector<cplx> out;
  for (const auto& e : d.entries)
    if (!level || e.multiplicity <= *level) out.push_back(e.location);
  return out;
}

bool same_support(const std::vector<cplx>& x, const std::vector<cplx>& y, double tol) {
  if (x.size() != y.size()) return false;
  auto covered = [tol](const std::vector<cplx>& p, const std::vector<cplx>& q) {
    return std::all_of(p.begin(), p.end(), [&](cplx z) {
      return std::any_of(q.begin(), q.end(), [&](cplx w) { return std::abs(z - w) < tol * (1.0 + std::abs(z)); });
    });
  };
  return covered(x, y) && covered(y, x);
}

}  // namespace

SharingReport sharing_analyzer(const AlgebroidEquation& u, const AlgebroidEquation& v, const DomainModel& dom,
                               const std::vector<SpherePoint>& candidates, double r_max, Level level,
                               const PolyalgOptions& opts) {
  const Disc disc{0.0, dom.boundary_radius(r_max)};
  SharingReport rep;
  for (const auto& a : candidates) {
    SharedValue sv;
    sv.a = a;
    sv.support_u = truncated_support(u, a, disc, level, opts);
    sv.support_v = truncated_support(v, a, disc, level, opts);
    sv.shared = same_support(sv.support_u, sv.support_v, opts.cluster_tol);
    if (sv.shared) {
      ++rep.shared_count;
      if (!sv.support_u.empty()) ++rep.nonempty_shared_count;
    }
    rep.values.push_back(std::move(sv));
  }
  if (rep.shared_count > 0) {
    CriterionInput in;
    in.mu = u.nu();
    in.nu = v.nu();
    in.k.assign(static_cast<std::size_t>(rep.shared_count), level);
    in.sheet_counts = {u.nu(), v.nu()};
    in.varsigma = std::max(u.nu(), v.nu());
    rep.condition = uniqueness_condition(in);
  }
  rep.identity_forced = rep.condition.first && rep.condition.second;

  rep.identity_observed = u.nu() == v.nu();
  for (int k = 0; k < 16 && rep.identity_observed; ++k) {
    const double rad = disc.radius * (0.35 + 0.02 * k);
    const cplx z = std::polar(rad, 0.3 + 2.0 * std::numbers::pi * k / 16.0);
    const auto ru = roots_at(u, z, opts).as_sphere_points();
    const auto rv = roots_at(v, z, opts).as_sphere_points();
    rep.identity_observed = multiset_distance(ru, rv) < 1e-8;
  }
  return rep;
}

}  // namespace algebroid
