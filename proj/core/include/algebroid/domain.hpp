#pragma once

#include <string_view>

#include "algebroid/polynomial.hpp"

namespace algebroid {

enum class DomainKind { kEuclidean, kPoincare };

std::string_view to_string(DomainKind kind);
DomainKind domain_kind_from_string(std::string_view name);

// Model domain with exhaustion Delta(r) = {|z| < s(r)} and reference point o.
class DomainModel {
 public:
  explicit DomainModel(DomainKind kind = DomainKind::kEuclidean, cplx reference = 0.0);

  DomainKind kind() const { return kind_; }
  cplx reference() const { return o_; }

  // Euclidean radius of the boundary circle of Delta(r).
  double boundary_radius(double r) const;
  bool inside(cplx z, double r) const { return std::abs(z) < boundary_radius(r); }

  // Green function g_r(o, z) of Delta(r) with pole at o; zero outside.
  double green(cplx z, double r) const;
  // Harmonic-measure density with respect to d(theta)/(2 pi) at s(r) e^{i theta}.
  double poisson_weight(double theta, double r) const;

  // T(r, Ricci): 0 on the plane, radial quadrature on the disc.
  double ricci_characteristic(double r) const;

 private:
  DomainKind kind_;
  cplx o_;
};

// Geodesic distance from 0 in the Poincare disc, log((1+|z|)/(1-|z|)).
double poincare_radius(cplx z);

}  // namespace algebroid
