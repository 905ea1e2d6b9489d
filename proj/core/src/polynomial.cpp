#include "algebroid/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "algebroid/errors.hpp"

namespace algebroid {

CPoly::CPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

CPoly::CPoly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) {
  normalize();
}

CPoly CPoly::constant(cplx c) { return CPoly(std::vector<cplx>{c}); }

CPoly CPoly::monomial(int power, cplx c) {
  std::vector<cplx> v(static_cast<std::size_t>(power) + 1, 0.0);
  v.back() = c;
  return CPoly(std::move(v));
}

CPoly CPoly::linear(cplx root) { return CPoly{-root, 1.0}; }

void CPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
}

int CPoly::degree() const {
  return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1;
}

cplx CPoly::operator[](int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(power)];
}

cplx CPoly::leading() const {
  return coeffs_.empty() ? cplx(0.0) : coeffs_.back();
}

cplx CPoly::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<cplx, cplx> CPoly::eval_with_derivative(cplx z) const {
  cplx p = 0.0;
  cplx dp = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

double CPoly::magnitude_at(cplx z) const {
  const double az = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * az + std::abs(*it);
  return acc;
}

CPoly CPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return CPoly(std::move(d));
}

CPoly CPoly::shifted(cplx c) const {
  // Repeated synthetic division (Horner's Taylor shift).
  std::vector<cplx> a = coeffs_;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = n - 1; k > i; --k) a[k - 1] += c * a[k];
  }
  return CPoly(std::move(a));
}

double CPoly::norm_inf() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

CPoly CPoly::trimmed(double rel_tol) const {
  const double cut = rel_tol * norm_inf();
  std::vector<cplx> v = coeffs_;
  while (!v.empty() && std::abs(v.back()) <= cut) v.pop_back();
  return CPoly(std::move(v));
}

CPoly& CPoly::operator+=(const CPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  normalize();
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  normalize();
  return *this;
}

CPoly operator*(const CPoly& lhs, const CPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<cplx> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  return CPoly(std::move(out));
}

CPoly& CPoly::operator*=(const CPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

CPoly& CPoly::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  normalize();
  return *this;
}

PolyDivision divmod(const CPoly& numerator, const CPoly& denominator) {
  if (denominator.is_zero()) fail(ErrorCode::kInvalidArgument, "polynomial division by zero");
  std::vector<cplx> rem = numerator.coeffs();
  const auto& den = denominator.coeffs();
  const int dn = denominator.degree();
  const int nn = numerator.degree();
  if (numerator.is_zero() || nn < dn) return {CPoly{}, numerator};
  std::vector<cplx> quot(static_cast<std::size_t>(nn - dn) + 1, 0.0);
  const cplx lead = den.back();
  for (int k = nn - dn; k >= 0; --k) {
    const cplx q = rem[static_cast<std::size_t>(k + dn)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dn; ++j) rem[static_cast<std::size_t>(k + j)] -= q * den[static_cast<std::size_t>(j)];
    rem[static_cast<std::size_t>(k + dn)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(std::max(dn, 1)));
  return {CPoly(std::move(quot)), CPoly(std::move(rem))};
}

void CompensatedSum::add_real(double v, double& sum, double& comp) {
  const double t = sum + v;
  if (std::abs(sum) >= std::abs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}

void CompensatedSum::add(cplx v) {
  double sr = sum_.real(), cr = comp_.real();
  double si = sum_.imag(), ci = comp_.imag();
  add_real(v.real(), sr, cr);
  add_real(v.imag(), si, ci);
  sum_ = {sr, si};
  comp_ = {cr, ci};
}

}  // namespace algebroid
