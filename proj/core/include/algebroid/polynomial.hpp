#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace algebroid {

using cplx = std::complex<double>;

// Dense univariate polynomial with complex coefficients, index = power.
// Stored coefficients never end in an exact zero; the zero polynomial has
// an empty coefficient vector and reports degree 0.
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<cplx> coeffs);
  CPoly(std::initializer_list<cplx> coeffs);

  static CPoly constant(cplx c);
  static CPoly monomial(int power, cplx c = 1.0);
  // Monic (z - root).
  static CPoly linear(cplx root);

  int degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx operator[](int power) const;
  cplx leading() const;

  cplx operator()(cplx z) const;
  // Value and first derivative in one Horner pass.
  std::pair<cplx, cplx> eval_with_derivative(cplx z) const;
  // Sum of |a_k| |z|^k, the natural scale for backward-error tests.
  double magnitude_at(cplx z) const;

  CPoly derivative() const;
  // Taylor shift: returns q with q(s) = p(c + s).
  CPoly shifted(cplx c) const;
  double norm_inf() const;
  // Drops trailing coefficients below rel_tol * norm_inf().
  CPoly trimmed(double rel_tol) const;

  CPoly& operator+=(const CPoly& rhs);
  CPoly& operator-=(const CPoly& rhs);
  CPoly& operator*=(const CPoly& rhs);
  CPoly& operator*=(cplx s);

  friend CPoly operator+(CPoly lhs, const CPoly& rhs) { return lhs += rhs; }
  friend CPoly operator-(CPoly lhs, const CPoly& rhs) { return lhs -= rhs; }
  friend CPoly operator*(const CPoly& lhs, const CPoly& rhs);
  friend CPoly operator*(CPoly p, cplx s) { return p *= s; }
  friend CPoly operator*(cplx s, CPoly p) { return p *= s; }
  friend CPoly operator-(CPoly p) { return p *= -1.0; }
  friend bool operator==(const CPoly&, const CPoly&) = default;

 private:
  void normalize();

  std::vector<cplx> coeffs_;
};

struct PolyDivision {
  CPoly quotient;
  CPoly remainder;
};

// Long division; the divisor must be nonzero.
PolyDivision divmod(const CPoly& numerator, const CPoly& denominator);

// Neumaier-compensated complex summation.
class CompensatedSum {
 public:
  void add(cplx v);
  cplx value() const { return sum_ + comp_; }

 private:
  static void add_real(double v, double& sum, double& comp);
  cplx sum_{};
  cplx comp_{};
};

}  // namespace algebroid
