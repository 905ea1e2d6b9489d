#include "algebroid/domain.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "algebroid/errors.hpp"

namespace algebroid {

std::string_view to_string(DomainKind kind) {
  return kind == DomainKind::kEuclidean ? "euclidean-plane" : "poincare-disc";
}

DomainKind domain_kind_from_string(std::string_view name) {
  if (name == "euclidean-plane" || name == "euclidean") return DomainKind::kEuclidean;
  if (name == "poincare-disc" || name == "poincare") return DomainKind::kPoincare;
  fail(ErrorCode::kInvalidArgument, "unknown domain '" + std::string(name) + "'");
}

DomainModel::DomainModel(DomainKind kind, cplx reference) : kind_(kind), o_(reference) {
  if (kind_ == DomainKind::kPoincare && std::abs(o_) >= 1.0)
    fail(ErrorCode::kInvalidArgument, "reference point must lie inside the unit disc");
}

double DomainModel::boundary_radius(double r) const {
  if (!(r > 0.0)) fail(ErrorCode::kInvalidArgument, "radius must be positive");
  return kind_ == DomainKind::kEuclidean ? r : std::tanh(0.5 * r);
}

double DomainModel::green(cplx z, double r) const {
  const double s = boundary_radius(r);
  if (std::abs(z) >= s) return 0.0;
  const double num = std::abs(s * s - std::conj(o_) * z);
  const double den = s * std::abs(z - o_);
  return std::log(num / den) / std::numbers::pi;
}

double DomainModel::poisson_weight(double theta, double r) const {
  if (o_ == cplx(0.0)) return 1.0;
  const double s = boundary_radius(r);
  return (s * s - std::norm(o_)) / std::norm(std::polar(s, theta) - o_);
}

double DomainModel::ricci_characteristic(double r) const {
  if (kind_ == DomainKind::kEuclidean) return 0.0;
  if (!(r > 0.0)) return 0.0;
  // Curvature -1 Ricci density against the radial Green kernel on sinh t dt.
  const double lt = std::log(std::tanh(0.5 * r));
  auto f = [lt](double t) {
    if (t <= 0.0) return 0.0;
    return (lt - std::log(std::tanh(0.5 * t))) * std::sinh(t);
  };
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, r, 15, 1e-14);
  return -integral;
}

double poincare_radius(cplx z) {
  const double a = std::abs(z);
  if (a >= 1.0) return std::numeric_limits<double>::infinity();
  return std::log((1.0 + a) / (1.0 - a));
}

}  // namespace algebroid
