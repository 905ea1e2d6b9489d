#include "algebroid/gauges.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <functional>

#include "algebroid/errors.hpp"

namespace algebroid {

namespace {

double tail_quadrature(const std::function<double(double)>& f, double r) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([&](double u) { return f(r + u); }, 1e-13);
}

}  // namespace

VolumeProfile VolumeProfile::power_log(double mu, double kappa) {
  if (!(mu > 0.0)) fail(ErrorCode::kInvalidArgument, "volume exponent must be positive");
  VolumeProfile v;
  v.mu_ = mu;
  v.kappa_ = kappa;
  return v;
}

VolumeProfile VolumeProfile::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) fail(ErrorCode::kInvalidArgument, "volume table needs at least two rows");
  std::sort(table.begin(), table.end());
  VolumeProfile v;
  v.tabulated_ = true;
  for (const auto& [t, vol] : table) {
    if (!(t > 0.0) || !(vol > 0.0)) fail(ErrorCode::kInvalidArgument, "volume table entries must be positive");
    v.table_.emplace_back(std::log(t), std::log(vol));
  }
  return v;
}

double VolumeProfile::operator()(double t) const {
  if (!tabulated_) return std::pow(t, mu_) * (kappa_ == 0.0 ? 1.0 : std::pow(std::log(t), kappa_));
  const double x = std::log(t);
  std::size_t k = 1;
  while (k + 1 < table_.size() && table_[k].first < x) ++k;
  const auto& [x0, y0] = table_[k - 1];
  const auto& [x1, y1] = table_[k];
  return std::exp(y0 + (y1 - y0) * (x - x0) / (x1 - x0));
}

double VolumeProfile::tail_integral(double r) const {
  if (!(r > 0.0)) fail(ErrorCode::kInvalidArgument, "radius must be positive");
  if (!tabulated_) {
    const bool converges = mu_ > 2.0 || (mu_ == 2.0 && kappa_ > 1.0);
    if (!converges) fail(ErrorCode::kParabolicProfile, "integral of t/V(t) diverges");
    if (kappa_ == 0.0) return std::pow(r, 2.0 - mu_) / (mu_ - 2.0);
    if (!(r > 1.0)) fail(ErrorCode::kInvalidArgument, "logarithmic profiles need r > 1");
  } else {
    const auto& a = table_[table_.size() - 2];
    const auto& b = table_.back();
    if ((b.second - a.second) / (b.first - a.first) <= 2.0)
      fail(ErrorCode::kParabolicProfile, "integral of t/V(t) diverges");
  }
  return tail_quadrature([this](double t) { return t / (*this)(t); }, r);
}

double chi(double s, double t) {
  if (s == 0.0) return t;
  return std::sinh(s * t) / s;
}

double gauge_h(const VolumeProfile& v, double r) { return v(r) / (r * r) * v.tail_integral(r); }

double gauge_h_delta(const VolumeProfile& v, double r, double delta) {
  return std::pow(v(r) / r, 1.0 + delta) / r * v.tail_integral(r);
}

double gauge_e_delta(double sigma, double tau, int m_dim, double r, double delta) {
  if (m_dim < 1) fail(ErrorCode::kInvalidArgument, "dimension must be at least 1");
  if (!(r > 0.0)) fail(ErrorCode::kInvalidArgument, "radius must be positive");
  const int p = 2 * m_dim - 1;
  double tail = 0.0;
  if (sigma == 0.0) {
    if (m_dim == 1) fail(ErrorCode::kParabolicProfile, "integral of 1/t diverges");
    tail = std::pow(r, 2.0 - 2.0 * m_dim) / (2.0 * m_dim - 2.0);
  } else if (m_dim == 1) {
    tail = -std::log(std::tanh(0.5 * std::abs(sigma) * r));
  } else {
    tail = tail_quadrature([&](double t) { return std::pow(chi(sigma, t), -p); }, r);
  }
  return (p * tau * tau + 1.0 / r) * std::pow(chi(tau, r), p * (1.0 + delta)) * tail;
}

GrowthGauges gauges(const VolumeProfile& v, double sigma, double tau, int m_dim, double r, double delta) {
  if (!(delta > 0.0)) fail(ErrorCode::kInvalidArgument, "delta must be positive");
  if (sigma < 0.0 || tau < sigma) fail(ErrorCode::kInvalidArgument, "need 0 <= sigma <= tau");
  GrowthGauges g;
  g.H = gauge_h(v, r);
  g.H_delta = gauge_h_delta(v, r, delta);
  g.chi = chi(tau, r);
  g.E_delta = gauge_e_delta(sigma, tau, m_dim, r, delta);
  return g;
}

}  // namespace algebroid
