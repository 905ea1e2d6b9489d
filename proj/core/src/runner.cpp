#include "algebroid/runner.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "algebroid/errors.hpp"
#include "algebroid/gauges.hpp"
#include "algebroid/nevan.hpp"
#include "algebroid/presets.hpp"
#include "algebroid/radcalc.hpp"
#include "algebroid/theorems.hpp"

namespace algebroid {

namespace {

using json = nlohmann::ordered_json;

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const SpherePoint& a) { return a.infinite ? json("inf") : to_json(a.value); }

json to_json(const TheoremLedger& l) {
  json rows = json::array();
  for (const auto& r : l.rows)
    rows.push_back({{"r", r.r},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs},
                    {"margin", r.margin},
                    {"pass", r.pass},
                    {"calibration", r.calibration}});
  json j = {{"id", l.id},
            {"verdict", l.verdict},
            {"exceptional-fraction", l.exceptional_fraction},
            {"constants", l.constants},
            {"rows", rows}};
  if (!l.diagnostic_name.empty()) j[l.diagnostic_name] = l.diagnostic;
  return j;
}

json to_json(const MonodromyCertificate& c, Irreducibility irr) {
  json loops = json::array();
  for (const auto& l : c.loops)
    loops.push_back({{"point", to_json(l.point.location)},
                     {"kind", std::string(to_string(l.point.kind))},
                     {"discriminant-multiplicity", l.point.discriminant_multiplicity},
                     {"radius", l.radius},
                     {"permutation", l.permutation},
                     {"cycle-type", l.cycle_type},
                     {"branch-order", l.branch_order}});
  json roots = json::array();
  for (const cplx w : c.base_roots) roots.push_back(to_json(w));
  return {{"basepoint", to_json(c.basepoint)},
          {"base-roots", roots},
          {"loops", loops},
          {"infinity-direction", to_json(c.infinity_direction)},
          {"infinity-radius", c.infinity_radius},
          {"infinity-permutation", c.infinity_permutation},
          {"transitive", c.transitive},
          {"product-consistent", c.product_consistent},
          {"irreducibility", irr == Irreducibility::kCertified ? "certified"
                             : irr == Irreducibility::kRefuted ? "refuted"
                                                               : "unknown"}};
}

struct CheckResult {
  std::string name;
  bool pass = false;
  json detail;
  std::vector<std::string> lines;
};

struct Column {
  std::string name;
  std::vector<double> values;
};

std::string fixed_line(const std::string& label, bool pass, const std::string& text) {
  return label + ": " + (pass ? "PASS" : "FAIL") + (text.empty() ? "" : " (" + text + ")");
}

double max_of(const TheoremLedger& l, double LedgerRow::*field) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : l.rows) m = std::max(m, r.*field);
  return m;
}

double min_margin(const TheoremLedger& l) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : l.rows) m = std::min(m, r.margin);
  return m;
}

std::vector<double> margins(const TheoremLedger& l) {
  std::vector<double> out;
  for (const auto& r : l.rows) out.push_back(r.margin);
  return out;
}

Disc monodromy_region(const AlgebroidEquation& eq, const RunSpec& spec, const PolyalgOptions& opts) {
  if (!spec.region.automatic) return Disc{spec.region.center, spec.region.radius};
  double reach = 0.0;
  for (const auto& c : all_critical_points(eq, opts)) reach = std::max(reach, std::abs(c.location));
  return Disc{0.0, 1.5 * reach + 1.0};
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_short(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kInvalidArgument, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) fail(ErrorCode::kInvalidArgument, "write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

cplx suggest_reference_shift(const AlgebroidEquation& eq, const std::vector<SpherePoint>& targets, cplx o) {
  std::vector<cplx> pts;
  for (const auto& c : all_critical_points(eq)) pts.push_back(c.location);
  for (const auto& a : targets) {
    if (a.infinite) continue;
    const CPoly vp = value_polynomial(eq, a.value);
    if (vp.is_zero()) continue;
    for (const auto& e : polynomial_divisor(vp).entries) pts.push_back(e.location);
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 1; k <= 400; ++k) {
    const cplx cand = o + 0.05 * k * std::polar(1.0, golden * k);
    bool clear = true;
    for (const cplx p : pts) clear = clear && std::abs(cand - p) > 0.02;
    if (clear) return cand;
  }
  return o + 0.05;
}

RunOutcome run(const RunSpec& spec, const RunOptions& opts) {
  auto log = [&](const std::string& msg) {
    if (opts.verbose && opts.log) *opts.log << "[algebroid] " << msg << '\n';
  };
  RunOutcome outcome;
  outcome.out_dir = opts.out_dir;
  std::filesystem::create_directories(opts.out_dir);

  json report;
  report["schema-version"] = kRunSpecSchemaVersion;
  report["spec"] = json::parse(serialize_run_spec(spec));

  std::vector<CheckResult> results;
  std::vector<Column> columns;
  std::vector<NevanlinnaSample> samples;
  std::vector<double> grid;
  std::vector<std::string> notes;
  bool config_error = false;

  auto run_check = [&](const std::string& name, const std::function<void(CheckResult&)>& body) {
    CheckResult res;
    res.name = name;
    log("running check " + name);
    try {
      body(res);
    } catch (const Error& e) {
      res.pass = false;
      res.detail = {{"error", std::string(to_string(e.code()))}, {"message", e.detail()}};
      res.lines.push_back(name + ": ERROR " + e.what());
      if (e.code() == ErrorCode::kConfigInvalid) config_error = true;
    }
    results.push_back(std::move(res));
  };

  if (spec.equation.is_radical()) {
    if (spec.wants("radical"))
      run_check("radical", [&](CheckResult& res) {
        const RadicalExpr expr = paper_example_radical();
        const long long val = valence(expr);
        json points = json::array();
        std::string orders;
        for (const auto& p : paper_example_points()) {
          const long long ord = branch_order(expr, p.point);
          json coords = json::array();
          for (const auto& c : p.point) coords.push_back(to_json(c));
          points.push_back({{"name", p.name}, {"point", coords}, {"branch-order", ord}});
          orders += (orders.empty() ? "" : ", ") + p.name + " " + std::to_string(ord);
        }
        res.detail = {{"expression", to_string(expr)}, {"valence", val}, {"points", points}};
        res.pass = true;
        res.lines.push_back("radical: valence " + std::to_string(val) + "; branch orders " + orders);
      });
  } else {
    AlgebroidEquation eq;
    try {
      eq = spec.equation.build();
    } catch (const Error& e) {
      fail(ErrorCode::kConfigInvalid, std::string("field 'equation': ") + e.detail());
    }
    report["equation"] = {{"label", eq.label()}, {"nu", eq.nu()}};
    const DomainModel dom(spec.domain, spec.reference);
    NevanOptions nopt;
    nopt.n_theta = spec.n_theta;
    nopt.polyalg.solver.seed = spec.seed;
    TheoremOptions topt;
    topt.nevan = nopt;
    topt.seed = spec.seed;
    topt.calibration_fraction = spec.calibration_fraction;
    topt.monodromy.track.polyalg = nopt.polyalg;
    grid = geometric_grid(spec.grid.min, spec.grid.max, spec.grid.count);

    std::optional<MonodromyCertificate> cert;
    auto certificate = [&]() -> const MonodromyCertificate& {
      if (!cert) {
        log("computing monodromy certificate");
        cert = monodromy(eq, monodromy_region(eq, spec, nopt.polyalg), spec.seed, topt.monodromy);
        apply_irreducibility(eq, *cert);
      }
      return *cert;
    };

    const bool want_curves = spec.checks.empty() || spec.wants("fmt") || spec.wants("bran") || spec.wants("smt") ||
                             spec.wants("defect") || spec.wants("ldl");
    BranchDivisor bran;
    std::optional<std::string> curve_error;
    if (want_curves) {
      try {
        if (eq.nu() > 1) bran = branch_divisor(certificate());
        log("sampling " + std::to_string(grid.size()) + " radii");
        samples = characteristic_curve(eq, dom, grid, spec.targets, &bran, nopt);
      } catch (const Error& e) {
        curve_error = e.what();
        if (e.code() == ErrorCode::kValueAtReference) {
          const cplx o2 = suggest_reference_shift(eq, spec.targets, spec.reference);
          notes.push_back("suggested reference-point: [" + format_short(o2.real()) + ", " + format_short(o2.imag()) +
                          "]");
        }
        results.push_back({"curves", false, {{"error", std::string(to_string(e.code()))}, {"message", e.detail()}},
                           {std::string("curves: ERROR ") + e.what()}});
      }
    }
    const bool curves_ok = want_curves && !curve_error;

    for (const auto& check : spec.checks) {
      if (check == "fmt") {
        for (const auto& a : spec.targets) {
          if (a.infinite) continue;
          const std::string label = "fmt[" + format_value(a) + "]";
          run_check(label, [&](CheckResult& res) {
            const auto ledger = fmt_residual(eq, dom, a.value, grid, topt);
            res.pass = ledger.verdict;
            res.detail = to_json(ledger);
            res.lines.push_back(fixed_line(label, res.pass,
                                           "max residual " + format_short(max_of(ledger, &LedgerRow::lhs)) +
                                               ", bound " + format_short(ledger.constants[1])));
            columns.push_back({"margin_" + label, margins(ledger)});
          });
        }
      } else if (check == "bran") {
        run_check("bran", [&](CheckResult& res) {
          if (eq.nu() > 1 && !cert) bran = branch_divisor(certificate());
          const auto ledger = branch_divisor_bound(eq, dom, grid, bran, topt);
          res.pass = ledger.verdict;
          res.detail = to_json(ledger);
          res.lines.push_back(fixed_line("bran", res.pass,
                                         "min margin " + format_short(min_margin(ledger)) + ", branch divisor degree " +
                                             std::to_string(bran.degree())));
          columns.push_back({"margin_bran", margins(ledger)});
          columns.push_back({"slack_bran", ledger.diagnostic});
        });
      } else if (check == "smt") {
        run_check("smt", [&](CheckResult& res) {
          if (!curves_ok) fail(ErrorCode::kInvalidArgument, "characteristic curves unavailable");
          const auto ledger = smt_from_samples(eq.nu(), dom, samples, topt);
          res.pass = ledger.verdict;
          res.detail = to_json(ledger);
          res.lines.push_back(fixed_line("smt", res.pass,
                                         "q = " + std::to_string(spec.targets.size()) + ", exceptional fraction " +
                                             format_short(ledger.exceptional_fraction) + ", growth trend " +
                                             format_short(ledger.diagnostic.empty() ? 0.0 : ledger.diagnostic.back())));
          columns.push_back({"margin_smt", margins(ledger)});
        });
      } else if (check == "defect") {
        run_check("defect", [&](CheckResult& res) {
          if (!curves_ok) fail(ErrorCode::kInvalidArgument, "characteristic curves unavailable");
          const auto rel = defect_relation_from_samples(eq.nu(), samples, topt);
          json defects = json::array();
          for (const auto& d : rel.defects)
            defects.push_back({{"value", to_json(d.a)},
                               {"simple-defect", d.simple_defect},
                               {"tail-window", json::array({d.r_lo, d.r_hi})}});
          res.pass = rel.verdict;
          res.detail = {{"defects", defects}, {"sum", rel.sum}, {"bound", rel.bound}, {"verdict", rel.verdict}};
          res.lines.push_back(
              fixed_line("defect", res.pass, "sum " + format_short(rel.sum) + " <= " + format_short(rel.bound)));
        });
      } else if (check == "ldl") {
        run_check("ldl", [&](CheckResult& res) {
          const auto ledger = ldl_check(eq, dom, grid, topt);
          res.pass = ledger.verdict;
          res.detail = to_json(ledger);
          res.lines.push_back(
              fixed_line("ldl", res.pass, "exceptional fraction " + format_short(ledger.exceptional_fraction)));
          columns.push_back({"margin_ldl", margins(ledger)});
        });
      } else if (check == "monodromy") {
        run_check("monodromy", [&](CheckResult& res) {
          const auto& c = certificate();
          res.pass = c.product_consistent;
          res.detail = to_json(c, eq.irreducibility());
          res.lines.push_back(fixed_line("monodromy", res.pass,
                                         std::to_string(c.loops.size()) + " critical points, transitive " +
                                             (c.transitive ? "yes" : "no")));
          for (const auto& l : c.loops) {
            std::string ct;
            for (const int k : l.cycle_type) ct += (ct.empty() ? "" : ",") + std::to_string(k);
            res.lines.push_back("  point " + format_short(l.point.location.real()) + "+" +
                                format_short(l.point.location.imag()) + "i: cycle type [" + ct + "], branch order " +
                                std::to_string(l.branch_order));
          }
        });
      } else if (check == "puiseux") {
        run_check("puiseux", [&](CheckResult& res) {
          const auto& c = certificate();
          json exps = json::array();
          res.pass = true;
          PuiseuxOptions popt;
          popt.track = topt.monodromy.track;
          for (std::size_t li = 0; li < c.loops.size(); ++li) {
            const auto& loop = c.loops[li];
            const auto cyc = cycles(loop.permutation);
            for (std::size_t ci = 0; ci < cyc.size(); ++ci) {
              if (cyc[ci].size() < 2) continue;
              const auto ex = puiseux_expand(eq, loop.point.location, sheet_cycle(c, li, ci), spec.puiseux_order, popt);
              const double allowed = std::max(1e-6, 10.0 * std::pow(ex.ring_radius, ex.truncation_order + 1));
              const bool ok = ex.substitution_residual <= allowed;
              res.pass = res.pass && ok;
              json coeffs = json::array();
              for (const cplx b : ex.coefficients) coeffs.push_back(to_json(b));
              exps.push_back({{"center", to_json(ex.center)},
                              {"lambda", ex.lambda},
                              {"tau", ex.tau},
                              {"coefficients", coeffs},
                              {"truncation-order", ex.truncation_order},
                              {"reciprocal", ex.reciprocal},
                              {"ring-radius", ex.ring_radius},
                              {"fit-residual", ex.fit_residual},
                              {"substitution-residual", ex.substitution_residual},
                              {"pass", ok}});
              res.lines.push_back("  expansion at " + format_short(ex.center.real()) + "+" +
                                  format_short(ex.center.imag()) + "i: lambda " + std::to_string(ex.lambda) + ", tau " +
                                  std::to_string(ex.tau) + ", residual " + format_short(ex.substitution_residual));
            }
          }
          res.detail = {{"expansions", exps}};
          res.lines.insert(res.lines.begin(),
                           fixed_line("puiseux", res.pass, std::to_string(exps.size()) + " expansions"));
        });
      } else if (check == "sharing") {
        run_check("sharing", [&](CheckResult& res) {
          const AlgebroidEquation other = spec.sharing->other.build();
          const auto rep =
              sharing_analyzer(eq, other, dom, spec.sharing->candidates, spec.grid.max, spec.sharing->level,
                               nopt.polyalg);
          json vals = json::array();
          for (const auto& v : rep.values) {
            json su = json::array(), sv = json::array();
            for (const cplx z : v.support_u) su.push_back(to_json(z));
            for (const cplx z : v.support_v) sv.push_back(to_json(z));
            vals.push_back({{"value", to_json(v.a)}, {"support-u", su}, {"support-v", sv}, {"shared", v.shared}});
          }
          res.pass = !rep.identity_forced || rep.identity_observed;
          res.detail = {{"values", vals},
                        {"shared-count", rep.shared_count},
                        {"nonempty-shared-count", rep.nonempty_shared_count},
                        {"condition", json::array({rep.condition.first, rep.condition.second})},
                        {"identity-forced", rep.identity_forced},
                        {"identity-observed", rep.identity_observed}};
          res.lines.push_back(fixed_line(
              "sharing", res.pass,
              std::to_string(rep.shared_count) + " shared values (" + std::to_string(rep.nonempty_shared_count) +
                  " nonempty), identity forced " + (rep.identity_forced ? "yes" : "no") + ", observed " +
                  (rep.identity_observed ? "yes" : "no")));
        });
      } else if (check == "radical") {
        run_check("radical", [&](CheckResult&) {
          fail(ErrorCode::kConfigInvalid, "field 'checks': radical needs the paper-example-radical preset");
        });
      }
    }
    if (cert && !spec.wants("monodromy")) report["monodromy"] = to_json(*cert, eq.irreducibility());
  }

  if (spec.wants("gauges")) {
    run_check("gauges", [&](CheckResult& res) {
      const auto& g = spec.gauges;
      const VolumeProfile v = VolumeProfile::power_log(g.mu, g.kappa);
      json rows = json::array();
      bool finite = chi(0.0, 1.0) == 1.0;
      for (const double r : g.radii) {
        const GrowthGauges gg = gauges(v, g.sigma, g.tau, g.m, r, g.delta);
        finite = finite && std::isfinite(gg.H) && std::isfinite(gg.H_delta) && std::isfinite(gg.chi) &&
                 std::isfinite(gg.E_delta);
        rows.push_back({{"r", r}, {"H", gg.H}, {"H-delta", gg.H_delta}, {"chi", gg.chi}, {"E-delta", gg.E_delta}});
      }
      res.pass = finite;
      res.detail = {{"rows", rows}};
      res.lines.push_back(fixed_line("gauges", res.pass, std::to_string(g.radii.size()) + " radii"));
    });
  }

  // curves.csv
  std::ostringstream csv;
  csv << "r,T,m,N,N_bran,T_ricci";
  for (const auto& a : spec.targets) {
    const std::string l = format_value(a);
    csv << ",m[" << l << "],N[" << l << "],Nbar[" << l << "]";
  }
  for (const auto& c : columns) csv << ',' << c.name;
  csv << '\n';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    csv << format_number(s.r) << ',' << format_number(s.T) << ',' << format_number(s.m) << ','
        << format_number(s.N) << ',' << format_number(s.N_bran) << ',' << format_number(s.T_ricci);
    for (const auto& v : s.values)
      csv << ',' << format_number(v.m) << ',' << format_number(v.N) << ',' << format_number(v.Nbar);
    for (const auto& c : columns) csv << ',' << (i < c.values.size() ? format_number(c.values[i]) : "nan");
    csv << '\n';
  }

  bool all_pass = true;
  json checks = json::object();
  std::ostringstream summary;
  summary << "algebroid run: " << (spec.equation.preset.empty() ? "custom equation" : spec.equation.preset) << ", "
          << to_string(spec.domain) << '\n';
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    json d = r.detail;
    if (d.is_null()) d = json::object();
    checks[r.name] = {{"pass", r.pass}, {"detail", d}};
    for (const auto& l : r.lines) summary << l << '\n';
  }
  for (const auto& n : notes) summary << n << '\n';
  outcome.exit_code = config_error ? 2 : (all_pass ? 0 : 1);
  summary << "verdict: " << (outcome.exit_code == 0 ? "PASS" : "FAIL") << '\n';
  report["checks"] = checks;
  json curve_rows = json::array();
  for (const auto& s : samples) {
    json vals = json::array();
    for (const auto& v : s.values)
      vals.push_back({{"value", to_json(v.a)}, {"m", v.m}, {"N", v.N}, {"Nbar", v.Nbar}});
    curve_rows.push_back({{"r", s.r},
                          {"T", s.T},
                          {"m", s.m},
                          {"N", s.N},
                          {"N_bran", s.N_bran},
                          {"T_ricci", s.T_ricci},
                          {"values", vals}});
  }
  report["curves"] = curve_rows;
  report["notes"] = notes;
  report["exit-code"] = outcome.exit_code;

  write_atomic(opts.out_dir / "report.json", report.dump(2) + "\n");
  write_atomic(opts.out_dir / "curves.csv", csv.str());
  write_atomic(opts.out_dir / "summary.txt", summary.str());
  outcome.summary = summary.str();
  return outcome;
}

}  // namespace algebroid
