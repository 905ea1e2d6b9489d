#pragma once

#include <complex>
#include <string>
#include <vector>

namespace algebroid {

// Coordinate hyperplane z_var = value.
struct Hyperplane {
  int var = 0;
  std::complex<double> value{};
};

// k-th root of a product of affine coordinate factors, e.g. sqrt(z2 z3)
// has index 2 and locus {z2 = 0, z3 = 0}. Index 1 marks an entire factor.
struct RadicalFactor {
  int index = 1;
  std::vector<Hyperplane> locus;
  std::string text;
};

struct RadicalTerm {
  std::vector<RadicalFactor> factors;
};

struct RadicalExpr {
  int variables = 1;
  std::vector<RadicalTerm> terms;
};

// Throws InvalidArgument on indices < 1, empty loci of radical factors or
// out-of-range variables.
void validate(const RadicalExpr& expr);

// Number of single-valued components: lcm of the indices over every locus
// component of a term, multiplied across terms.
long long valence(const RadicalExpr& expr);

// Local cycle product minus one. Radicals whose locus passes through the
// point contribute the lcm of their passing components; contributions
// multiply within and across terms. Throws NotABranchPoint if no locus
// passes through the point.
long long branch_order(const RadicalExpr& expr, const std::vector<std::complex<double>>& point,
                       double tol = 1e-12);

// w = z2 cbrt(z1 - 1) - z3 sqrt(z2 z3) (z1 - 2i)^{1/4} + z1 sqrt(z2 - 3i) cbrt(z3 - 4i).
RadicalExpr paper_example_radical();

struct NamedPoint {
  std::string name;
  std::vector<std::complex<double>> point;
};

// P1(2i, 0, 1), P2(0, 3i, 4i), P3(1, 0, 4i), P4(1, 0, 0).
std::vector<NamedPoint> paper_example_points();

std::string to_string(const RadicalExpr& expr);

}  // namespace algebroid
