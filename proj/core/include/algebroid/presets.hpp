#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "algebroid/polyalg.hpp"

namespace algebroid {

struct PresetInfo {
  std::string name;
  std::string formula;
  bool irreducible = true;
};

// Equation presets; "paper-example-radical" is a radical expression, not an
// equation, and is handled by radcalc.
const std::vector<PresetInfo>& preset_catalog();
bool is_equation_preset(std::string_view name);
AlgebroidEquation preset_equation(std::string_view name);

// Degree-n Taylor polynomial of e^{sign z}.
CPoly exp_taylor(int degree, double sign = 1.0);

}  // namespace algebroid
