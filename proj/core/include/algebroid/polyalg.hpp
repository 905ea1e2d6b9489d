#pragma once

#include <string>
#include <vector>

#include "algebroid/polynomial.hpp"
#include "algebroid/roots.hpp"

namespace algebroid {

enum class Irreducibility { kUnknown, kCertified, kRefuted };

// psi(z, w) = A_nu(z) w^nu + ... + A_0(z), the defining equation of a
// nu-valued algebroid function on the plane.
class AlgebroidEquation {
 public:
  AlgebroidEquation() = default;
  // Validates: at least two coefficients, A_nu not identically zero and
  // the coefficients share no common zero (checked on the zeros of the
  // lowest-degree nonzero A_j). Throws InvalidArgument otherwise.
  AlgebroidEquation(std::vector<CPoly> coefficients, std::string label = {});

  int nu() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<CPoly>& coefficients() const { return coeffs_; }
  const CPoly& A(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
  const CPoly& leading() const { return coeffs_.back(); }
  const std::string& label() const { return label_; }

  Irreducibility irreducibility() const { return irreducible_; }
  void set_irreducibility(Irreducibility flag) { irreducible_ = flag; }

  // Values A_0(z), ..., A_nu(z).
  std::vector<cplx> coefficients_at(cplx z) const;
  // Highest z-degree over all coefficients.
  int z_degree() const;

 private:
  std::vector<CPoly> coeffs_;
  std::string label_;
  Irreducibility irreducible_ = Irreducibility::kUnknown;
};

// Multiset of the nu solutions at a point; roots at infinity are counted,
// not stored.
struct RootSet {
  cplx point{};
  std::vector<cplx> finite;
  int infinite_count = 0;

  int size() const { return static_cast<int>(finite.size()) + infinite_count; }
  std::vector<SpherePoint> as_sphere_points() const;
};

struct DivisorEntry {
  cplx location;
  int multiplicity = 1;
};

struct Divisor1D {
  std::vector<DivisorEntry> entries;

  int degree() const;
  bool empty() const { return entries.empty(); }
};

struct Disc {
  cplx center{};
  double radius = 1.0;

  bool contains(cplx z) const { return std::abs(z - center) < radius; }
};

struct PolyalgOptions {
  SolverOptions solver{};
  double cluster_tol = 1e-6;
  // A_nu(z) is treated as vanishing below this fraction of sum_k |a_k| |z|^k.
  double degree_drop_tol = 1e-14;
  // Zeros closer than this (relative to 1 + radius) to a region boundary
  // make counting ill-conditioned.
  double boundary_tol = 1e-9;
  double division_tol = 1e-8;
  // Search radius (relative) for numerically split multiple roots.
  double multiple_root_radius = 1e-3;
  // Relative size below which p^{(k)}(c)/k! counts as zero.
  double multiple_root_tol = 1e-11;
};

cplx eval_psi(const AlgebroidEquation& eq, cplx z, cplx w);

RootSet roots_at(const AlgebroidEquation& eq, cplx z, const PolyalgOptions& opts = {});

// Determinant of the (2nu-1)x(2nu-1) Sylvester matrix of psi and psi_w
// over polynomial entries. nu = 1 returns A_1.
CPoly sylvester_resultant(const AlgebroidEquation& eq);

// J = (-1)^{nu(nu-1)/2} R / A_nu by exact polynomial division.
CPoly discriminant(const AlgebroidEquation& eq, const PolyalgOptions& opts = {});

// Elementary symmetric functions e_1..e_nu of the roots at z.
std::vector<cplx> vieta_products(const AlgebroidEquation& eq, cplx z);

// Groups computed zeros of p into multiple roots. Candidates within a loose
// radius are merged only if p and its low derivatives vanish at the centre
// polished on p^{(m-1)}; otherwise the tight cluster_tol grouping is kept.
std::vector<Cluster> cluster_roots(const CPoly& p, std::span<const cplx> roots, const PolyalgOptions& opts = {});

// Zeros of p with multiplicities, everywhere in the plane.
Divisor1D polynomial_divisor(const CPoly& p, const PolyalgOptions& opts = {});

Divisor1D pole_divisor(const AlgebroidEquation& eq, const Disc& region, const PolyalgOptions& opts = {});

Divisor1D zero_divisor(const AlgebroidEquation& eq, const SpherePoint& a, const Disc& region,
                       const PolyalgOptions& opts = {});

// psi(z, a) as a polynomial in z.
CPoly value_polynomial(const AlgebroidEquation& eq, cplx a);

// Coefficients B_k of psi(z, u + a) in powers of u.
std::vector<CPoly> shifted_coefficients(const AlgebroidEquation& eq, cplx a);

// Equation satisfied by 1/(w - a): shift by a, then reverse the order.
AlgebroidEquation inverted_shift(const AlgebroidEquation& eq, cplx a);

// Homogeneous coefficients [A_0 : ... : A_nu] of prod (e1 - w_j e0); the
// largest-magnitude coefficient is scaled to exactly 1.
std::vector<cplx> reduce(const std::vector<SpherePoint>& points);

std::vector<SpherePoint> decompose(const std::vector<cplx>& coeffs, const PolyalgOptions& opts = {});

// Optimal-assignment distance between two multisets on the sphere
// (maximum chordal distance of matched pairs).
double multiset_distance(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b);

}  // namespace algebroid
