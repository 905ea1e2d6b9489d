#pragma once

#include <utility>
#include <vector>

namespace algebroid {

// Volume growth V(t) of geodesic balls: t^mu log^kappa t, or a table
// interpolated log-log and extrapolated with the last slope.
class VolumeProfile {
 public:
  static VolumeProfile power_log(double mu, double kappa = 0.0);
  static VolumeProfile tabulated(std::vector<std::pair<double, double>> table);

  double operator()(double t) const;
  // Integral of t / V(t) over [r, inf); throws ParabolicProfile if it diverges.
  double tail_integral(double r) const;

 private:
  bool tabulated_ = false;
  double mu_ = 0.0;
  double kappa_ = 0.0;
  std::vector<std::pair<double, double>> table_;  // log t, log V
};

// sinh(s t) / s, continued by t at s = 0.
double chi(double s, double t);

// H(r) = V(r)/r^2 * tail(r).
double gauge_h(const VolumeProfile& v, double r);
// H(r, delta) = (1/r) (V(r)/r)^{1+delta} * tail(r).
double gauge_h_delta(const VolumeProfile& v, double r, double delta);
// E(r, delta) = ((2m-1) tau^2 + 1/r) chi(tau, r)^{(2m-1)(1+delta)} * int_r^inf chi(sigma, t)^{1-2m} dt.
double gauge_e_delta(double sigma, double tau, int m_dim, double r, double delta);

struct GrowthGauges {
  double H = 0.0;
  double H_delta = 0.0;
  double chi = 0.0;  // chi(tau, r)
  double E_delta = 0.0;
};

GrowthGauges gauges(const VolumeProfile& v, double sigma, double tau, int m_dim, double r, double delta);

}  // namespace algebroid
