#include "algebroid/presets.hpp"

#include <algorithm>

#include "algebroid/errors.hpp"

namespace algebroid {

namespace {

constexpr int kExpDegree = 30;

// w^nu - p(z).
AlgebroidEquation pure_power(int nu, const CPoly& p, const std::string& label) {
  std::vector<CPoly> a(static_cast<std::size_t>(nu) + 1);
  a[0] = -p;
  a.back() = CPoly::constant(1.0);
  return AlgebroidEquation(std::move(a), label);
}

}  // namespace

CPoly exp_taylor(int degree, double sign) {
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  double term = 1.0;
  for (int k = 0; k <= degree; ++k) {
    c[static_cast<std::size_t>(k)] = term;
    term *= sign / (k + 1);
  }
  return CPoly(std::move(c));
}

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = {
      {"sqrt-z", "w^2 - z", true},
      {"sqrt-z-minus-1", "w^2 - (z - 1)", true},
      {"sqrt-z-shifted", "w^2 - (z - 0.001)", true},
      {"cbrt-z", "w^3 - z", true},
      {"cbrt-z-minus-1", "w^3 - (z - 1)", true},
      {"sqrt-two-points", "w^2 - (z - 1)(z - 2)", true},
      {"sqrt-quartic", "w^2 - (z^2 - 1)(z^2 - 4)", true},
      {"sqrt-z-squared", "w^2 - z^2", false},
      {"pole-sqrt", "z w^2 - 1", true},
      {"cusp", "(w - 1)^2 - z^3", true},
      {"mobius", "(z + 1) w - (z - 1)", true},
      {"rational-quadratic", "(z^2 + z + 1) w - (z^2 - 4)", true},
      {"exp-taylor", "w - E30(z), E30 the degree-30 Taylor polynomial of e^z", true},
      {"exp-taylor-reflected", "w - E30(-z)", true},
      {"paper-example-radical",
       "z2 cbrt(z1 - 1) - z3 sqrt(z2 z3) (z1 - 2i)^(1/4) + z1 sqrt(z2 - 3i) cbrt(z3 - 4i)", true},
  };
  return catalog;
}

bool is_equation_preset(std::string_view name) {
  const auto& c = preset_catalog();
  return name != "paper-example-radical" &&
         std::any_of(c.begin(), c.end(), [&](const PresetInfo& p) { return p.name == name; });
}

AlgebroidEquation preset_equation(std::string_view name) {
  const std::string label(name);
  const CPoly z = CPoly::monomial(1);
  const CPoly one = CPoly::constant(1.0);
  if (name == "sqrt-z") return pure_power(2, z, label);
  if (name == "sqrt-z-minus-1") return pure_power(2, CPoly::linear(1.0), label);
  if (name == "sqrt-z-shifted") return pure_power(2, CPoly::linear(1e-3), label);
  if (name == "cbrt-z") return pure_power(3, z, label);
  if (name == "cbrt-z-minus-1") return pure_power(3, CPoly::linear(1.0), label);
  if (name == "sqrt-two-points") return pure_power(2, CPoly::linear(1.0) * CPoly::linear(2.0), label);
  if (name == "sqrt-quartic")
    return pure_power(2, CPoly::linear(1.0) * CPoly::linear(-1.0) * CPoly::linear(2.0) * CPoly::linear(-2.0), label);
  if (name == "sqrt-z-squared") return pure_power(2, z * z, label);
  if (name == "pole-sqrt") return AlgebroidEquation({-one, CPoly{}, z}, label);
  if (name == "cusp") {
    // w^2 - 2w + 1 - z^3
    return AlgebroidEquation({one - CPoly::monomial(3), CPoly::constant(-2.0), one}, label);
  }
  if (name == "mobius") return AlgebroidEquation({-CPoly::linear(1.0), CPoly::linear(-1.0)}, label);
  if (name == "rational-quadratic")
    return AlgebroidEquation({-(z * z - CPoly::constant(4.0)), CPoly{1.0, 1.0, 1.0}}, label);
  if (name == "exp-taylor") return AlgebroidEquation({-exp_taylor(kExpDegree), one}, label);
  if (name == "exp-taylor-reflected") return AlgebroidEquation({-exp_taylor(kExpDegree, -1.0), one}, label);
  fail(ErrorCode::kInvalidArgument, "unknown equation preset '" + label + "'");
}

}  // namespace algebroid
