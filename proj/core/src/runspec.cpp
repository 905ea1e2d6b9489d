#include "algebroid/runspec.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "algebroid/errors.hpp"
#include "algebroid/presets.hpp"
#include "algebroid/runner.hpp"

namespace algebroid {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  fail(ErrorCode::kConfigInvalid, "field '" + field + "': " + why);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) invalid(where.empty() ? "<root>" : where, "expected an object");
  for (const auto& item : obj.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return item.key() == a; });
    if (!ok) invalid(where.empty() ? item.key() : where + "." + item.key(), "unknown field");
  }
}

double parse_real(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
      } else {
        const long long p = std::stoll(s.substr(0, slash), &used);
        if (used != slash) invalid(field, "malformed rational '" + s + "'");
        const std::string den = s.substr(slash + 1);
        const long long q = std::stoll(den, &used);
        if (used != den.size() || q == 0) invalid(field, "malformed rational '" + s + "'");
        return static_cast<double>(p) / static_cast<double>(q);
      }
    } catch (const std::logic_error&) {
    }
    invalid(field, "malformed number '" + s + "'");
  }
  invalid(field, "expected a number or a \"p/q\" string");
}

cplx parse_complex(const json& j, const std::string& field) {
  if (j.is_array()) {
    if (j.size() != 2) invalid(field, "expected [re, im]");
    return {parse_real(j[0], field + "[0]"), parse_real(j[1], field + "[1]")};
  }
  return parse_real(j, field);
}

SpherePoint parse_value(const json& j, const std::string& field) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "∞") return SpherePoint::at_infinity();
  }
  return SpherePoint::finite(parse_complex(j, field));
}

EquationSpec parse_equation(const json& j, const std::string& field) {
  reject_unknown(j, field, {"preset", "nu", "coefficients"});
  EquationSpec e;
  if (j.contains("preset")) {
    if (j.contains("coefficients") || j.contains("nu")) invalid(field, "give either a preset or coefficients");
    if (!j["preset"].is_string()) invalid(field + ".preset", "expected a string");
    e.preset = j["preset"].get<std::string>();
    if (!is_equation_preset(e.preset) && !e.is_radical()) invalid(field + ".preset", "unknown preset '" + e.preset + "'");
    return e;
  }
  if (!j.contains("nu")) invalid(field + ".nu", "missing");
  if (!j["nu"].is_number_integer() || j["nu"].get<int>() < 1) invalid(field + ".nu", "must be an integer >= 1");
  e.nu = j["nu"].get<int>();
  if (!j.contains("coefficients") || !j["coefficients"].is_array())
    invalid(field + ".coefficients", "expected a list of nu + 1 coefficient lists");
  const auto& c = j["coefficients"];
  if (static_cast<int>(c.size()) != e.nu + 1) invalid(field + ".coefficients", "length must be nu + 1");
  for (std::size_t k = 0; k < c.size(); ++k) {
    const std::string f = field + ".coefficients[" + std::to_string(k) + "]";
    if (!c[k].is_array()) invalid(f, "expected a list of coefficients by power");
    std::vector<cplx> poly;
    for (std::size_t p = 0; p < c[k].size(); ++p) poly.push_back(parse_complex(c[k][p], f + "[" + std::to_string(p) + "]"));
    e.coefficients.push_back(std::move(poly));
  }
  try {
    (void)e.build();
  } catch (const Error& err) {
    invalid(field, err.detail());
  }
  return e;
}

template <class T>
T get_number(const json& j, const std::string& field) {
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) invalid(field, "expected an integer");
  } else {
    if (!j.is_number()) invalid(field, "expected a number");
  }
  return j.get<T>();
}

}  // namespace

AlgebroidEquation EquationSpec::build() const {
  if (!preset.empty()) return preset_equation(preset);
  std::vector<CPoly> a;
  for (const auto& c : coefficients) a.emplace_back(c);
  return AlgebroidEquation(std::move(a), "custom");
}

bool RunSpec::wants(const std::string& check) const {
  return std::find(checks.begin(), checks.end(), check) != checks.end();
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> checks = {"fmt",      "bran",    "smt",     "defect", "ldl",
                                                  "monodromy", "puiseux", "radical", "gauges", "sharing"};
  return checks;
}

SpherePoint parse_value_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    j = text;
  }
  return parse_value(j, "value");
}

std::string format_value(const SpherePoint& a) {
  if (a.infinite) return "inf";
  const double re = a.value.real(), im = a.value.imag();
  if (im == 0.0) return format_short(re);
  if (re == 0.0) return format_short(im) + "i";
  return format_short(re) + (im < 0 ? "-" : "+") + format_short(std::abs(im)) + "i";
}

RunSpec parse_run_spec(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfigInvalid, std::string("spec is not valid JSON: ") + e.what());
  }
  reject_unknown(root, "",
                 {"schema-version", "domain", "reference-point", "equation", "targets", "r-grid", "n-theta", "seed",
                  "checks", "region", "puiseux", "sharing", "gauges", "calibration-fraction", "output"});
  RunSpec s;
  if (!root.contains("schema-version")) invalid("schema-version", "missing");
  s.schema_version = get_number<int>(root["schema-version"], "schema-version");
  if (s.schema_version != kRunSpecSchemaVersion)
    invalid("schema-version", "unsupported version " + std::to_string(s.schema_version));

  if (root.contains("domain")) {
    if (!root["domain"].is_string()) invalid("domain", "expected a string");
    try {
      s.domain = domain_kind_from_string(root["domain"].get<std::string>());
    } catch (const Error&) {
      invalid("domain", "expected \"euclidean-plane\" or \"poincare-disc\"");
    }
  }
  if (root.contains("reference-point")) s.reference = parse_complex(root["reference-point"], "reference-point");
  if (s.domain == DomainKind::kPoincare && std::abs(s.reference) >= 1.0)
    invalid("reference-point", "must lie inside the unit disc");

  if (!root.contains("equation")) invalid("equation", "missing");
  s.equation = parse_equation(root["equation"], "equation");

  if (root.contains("targets")) {
    if (!root["targets"].is_array()) invalid("targets", "expected a list");
    for (std::size_t i = 0; i < root["targets"].size(); ++i)
      s.targets.push_back(parse_value(root["targets"][i], "targets[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < s.targets.size(); ++i)
      for (std::size_t j = i + 1; j < s.targets.size(); ++j)
        if (s.targets[i] == s.targets[j]) invalid("targets[" + std::to_string(j) + "]", "duplicate value");
  }

  if (root.contains("r-grid")) {
    const auto& g = root["r-grid"];
    reject_unknown(g, "r-grid", {"min", "max", "count"});
    if (g.contains("min")) s.grid.min = get_number<double>(g["min"], "r-grid.min");
    if (g.contains("max")) s.grid.max = get_number<double>(g["max"], "r-grid.max");
    if (g.contains("count")) s.grid.count = get_number<int>(g["count"], "r-grid.count");
  }
  if (!(s.grid.min > 0.0)) invalid("r-grid.min", "must be positive");
  if (!(s.grid.min < s.grid.max)) invalid("r-grid.max", "must exceed r-grid.min");
  if (s.grid.count < 2) invalid("r-grid.count", "must be at least 2");

  if (root.contains("n-theta")) s.n_theta = get_number<int>(root["n-theta"], "n-theta");
  if (s.n_theta < 16) invalid("n-theta", "must be at least 16");
  if (root.contains("seed")) s.seed = get_number<std::uint64_t>(root["seed"], "seed");

  if (root.contains("checks")) {
    if (!root["checks"].is_array()) invalid("checks", "expected a list");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < root["checks"].size(); ++i) {
      const auto& c = root["checks"][i];
      const std::string f = "checks[" + std::to_string(i) + "]";
      if (!c.is_string()) invalid(f, "expected a string");
      const auto name = c.get<std::string>();
      const auto& known = known_checks();
      if (std::find(known.begin(), known.end(), name) == known.end()) invalid(f, "unknown check '" + name + "'");
      if (seen.insert(name).second) s.checks.push_back(name);
    }
  }
  if (!s.equation.is_radical() && s.wants("radical"))
    invalid("checks", "radical needs the paper-example-radical preset");
  if (s.equation.is_radical())
    for (const auto& c : s.checks)
      if (c != "radical" && c != "gauges") invalid("checks", "check '" + c + "' needs an equation, not a radical");

  if (root.contains("region")) {
    const auto& r = root["region"];
    reject_unknown(r, "region", {"center", "radius"});
    s.region.automatic = false;
    if (r.contains("center")) s.region.center = parse_complex(r["center"], "region.center");
    if (!r.contains("radius")) invalid("region.radius", "missing");
    s.region.radius = get_number<double>(r["radius"], "region.radius");
    if (!(s.region.radius > 0.0)) invalid("region.radius", "must be positive");
  }

  if (root.contains("puiseux")) {
    reject_unknown(root["puiseux"], "puiseux", {"order"});
    if (root["puiseux"].contains("order")) s.puiseux_order = get_number<int>(root["puiseux"]["order"], "puiseux.order");
    if (s.puiseux_order < 1) invalid("puiseux.order", "must be at least 1");
  }

  if (root.contains("sharing")) {
    const auto& sh = root["sharing"];
    reject_unknown(sh, "sharing", {"other", "candidates", "level"});
    SharingSpec sp;
    if (!sh.contains("other")) invalid("sharing.other", "missing");
    sp.other = parse_equation(sh["other"], "sharing.other");
    if (sp.other.is_radical()) invalid("sharing.other", "must be an equation");
    if (!sh.contains("candidates") || !sh["candidates"].is_array()) invalid("sharing.candidates", "expected a list");
    for (std::size_t i = 0; i < sh["candidates"].size(); ++i)
      sp.candidates.push_back(parse_value(sh["candidates"][i], "sharing.candidates[" + std::to_string(i) + "]"));
    if (sh.contains("level") && !sh["level"].is_null()) {
      if (sh["level"].is_string() && sh["level"].get<std::string>() == "inf") {
        sp.level = std::nullopt;
      } else {
        sp.level = get_number<long long>(sh["level"], "sharing.level");
        if (*sp.level < 1) invalid("sharing.level", "must be positive or \"inf\"");
      }
    }
    s.sharing = std::move(sp);
  }
  if (s.wants("sharing") && !s.sharing) invalid("sharing", "required by the sharing check");

  if (root.contains("gauges")) {
    const auto& g = root["gauges"];
    reject_unknown(g, "gauges", {"mu", "kappa", "sigma", "tau", "m", "delta", "radii"});
    if (g.contains("mu")) s.gauges.mu = get_number<double>(g["mu"], "gauges.mu");
    if (g.contains("kappa")) s.gauges.kappa = get_number<double>(g["kappa"], "gauges.kappa");
    if (g.contains("sigma")) s.gauges.sigma = get_number<double>(g["sigma"], "gauges.sigma");
    if (g.contains("tau")) s.gauges.tau = get_number<double>(g["tau"], "gauges.tau");
    if (g.contains("m")) s.gauges.m = get_number<int>(g["m"], "gauges.m");
    if (g.contains("delta")) s.gauges.delta = get_number<double>(g["delta"], "gauges.delta");
    if (g.contains("radii")) {
      if (!g["radii"].is_array() || g["radii"].empty()) invalid("gauges.radii", "expected a nonempty list");
      s.gauges.radii.clear();
      for (std::size_t i = 0; i < g["radii"].size(); ++i)
        s.gauges.radii.push_back(get_number<double>(g["radii"][i], "gauges.radii[" + std::to_string(i) + "]"));
    }
    if (!(s.gauges.mu > 0.0)) invalid("gauges.mu", "must be positive");
    if (s.gauges.m < 1) invalid("gauges.m", "must be at least 1");
    if (!(s.gauges.delta > 0.0)) invalid("gauges.delta", "must be positive");
    if (s.gauges.sigma < 0.0 || s.gauges.tau < s.gauges.sigma) invalid("gauges.tau", "need 0 <= sigma <= tau");
    for (const double r : s.gauges.radii)
      if (!(r > 0.0)) invalid("gauges.radii", "radii must be positive");
  }

  if (root.contains("calibration-fraction")) {
    s.calibration_fraction = get_number<double>(root["calibration-fraction"], "calibration-fraction");
    if (!(s.calibration_fraction > 0.0 && s.calibration_fraction < 1.0))
      invalid("calibration-fraction", "must lie in (0, 1)");
  }

  if (root.contains("output")) {
    reject_unknown(root["output"], "output", {"dir"});
    if (root["output"].contains("dir")) {
      if (!root["output"]["dir"].is_string()) invalid("output.dir", "expected a string");
      s.output_dir = root["output"]["dir"].get<std::string>();
    }
  }
  return s;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson complex_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

ojson value_json(const SpherePoint& a) { return a.infinite ? ojson("inf") : complex_json(a.value); }

ojson equation_json(const EquationSpec& e) {
  if (!e.preset.empty()) return {{"preset", e.preset}};
  ojson coeffs = ojson::array();
  for (const auto& poly : e.coefficients) {
    ojson p = ojson::array();
    for (const cplx c : poly) p.push_back(complex_json(c));
    coeffs.push_back(p);
  }
  return {{"nu", e.nu}, {"coefficients", coeffs}};
}

}  // namespace

std::string serialize_run_spec(const RunSpec& s) {
  ojson j;
  j["schema-version"] = s.schema_version;
  j["domain"] = std::string(to_string(s.domain));
  j["reference-point"] = complex_json(s.reference);
  j["equation"] = equation_json(s.equation);
  ojson targets = ojson::array();
  for (const auto& a : s.targets) targets.push_back(value_json(a));
  j["targets"] = targets;
  j["r-grid"] = {{"min", s.grid.min}, {"max", s.grid.max}, {"count", s.grid.count}};
  j["n-theta"] = s.n_theta;
  j["seed"] = s.seed;
  j["checks"] = s.checks;
  if (!s.region.automatic) j["region"] = {{"center", complex_json(s.region.center)}, {"radius", s.region.radius}};
  j["puiseux"] = {{"order", s.puiseux_order}};
  if (s.sharing) {
    ojson cands = ojson::array();
    for (const auto& a : s.sharing->candidates) cands.push_back(value_json(a));
    j["sharing"] = {{"other", equation_json(s.sharing->other)},
                    {"candidates", cands},
                    {"level", s.sharing->level ? ojson(*s.sharing->level) : ojson("inf")}};
  }
  j["gauges"] = {{"mu", s.gauges.mu},   {"kappa", s.gauges.kappa}, {"sigma", s.gauges.sigma}, {"tau", s.gauges.tau},
                 {"m", s.gauges.m},     {"delta", s.gauges.delta}, {"radii", s.gauges.radii}};
  j["calibration-fraction"] = s.calibration_fraction;
  if (!s.output_dir.empty()) j["output"] = {{"dir", s.output_dir}};
  return j.dump(2);
}

RunSpec load_run_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kConfigInvalid, "cannot read spec file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_spec(ss.str());
}

}  // namespace algebroid
