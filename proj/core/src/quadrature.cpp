#include "algebroid/quadrature.hpp"

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <numbers>
#include <vector>

#include "algebroid/errors.hpp"

namespace algebroid {

namespace {

constexpr int kMaxDepth = 48;

struct Panel {
  const std::function<PiecewiseSample(double)>& f;
  QuadratureStats& stats;

  PiecewiseSample eval(double t) {
    ++stats.evaluations;
    return f(t);
  }

  double integrate(double a, double b, int left_sig, int right_sig, int depth) {
    using Rule = boost::math::quadrature::gauss<double, 8>;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    bool uniform = left_sig == right_sig;
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (const double sign : {-1.0, 1.0}) {
        const auto s = eval(mid + sign * half * x[k]);
        uniform = uniform && s.signature == left_sig;
        sum += w[k] * s.value;
      }
    }
    if (uniform || depth >= kMaxDepth || half < 1e-13) return sum * half;
    const int mid_sig = eval(mid).signature;
    return integrate(a, mid, left_sig, mid_sig, depth + 1) + integrate(mid, b, mid_sig, right_sig, depth + 1);
  }
};

}  // namespace

double periodic_mean(const std::function<PiecewiseSample(double)>& f, int n, QuadratureStats* stats) {
  if (n < 16) fail(ErrorCode::kInvalidArgument, "n_theta must be at least 16");
  QuadratureStats local;
  QuadratureStats& st = stats ? *stats : local;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<PiecewiseSample> nodes(static_cast<std::size_t>(n));
  double sum = 0.0;
  bool uniform = true;
  for (int k = 0; k < n; ++k) {
    nodes[static_cast<std::size_t>(k)] = f(two_pi * k / n);
    ++st.evaluations;
    sum += nodes[static_cast<std::size_t>(k)].value;
    uniform = uniform && nodes[static_cast<std::size_t>(k)].signature == nodes[0].signature;
  }
  if (uniform) return sum / n;

  st.refined = true;
  const int panels = std::max(n / 8, 4);
  Panel p{f, st};
  double total = 0.0;
  int left = nodes[0].signature;
  for (int k = 0; k < panels; ++k) {
    const double a = two_pi * k / panels;
    const double b = two_pi * (k + 1) / panels;
    const int right = (k + 1 == panels) ? nodes[0].signature : p.eval(b).signature;
    total += p.integrate(a, b, left, right, 0);
    left = right;
  }
  return total / two_pi;
}

}  // namespace algebroid
