#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebroid/domain.hpp"
#include "algebroid/polyalg.hpp"
#include "algebroid/theorems.hpp"

namespace algebroid {

inline constexpr int kRunSpecSchemaVersion = 1;

// Either a named preset or explicit coefficient lists A_0 ... A_nu.
struct EquationSpec {
  std::string preset;
  int nu = 0;
  std::vector<std::vector<cplx>> coefficients;

  bool is_radical() const { return preset == "paper-example-radical"; }
  AlgebroidEquation build() const;
};

struct GridSpec {
  double min = 1.0;
  double max = 10.0;
  int count = 16;
};

struct RegionSpec {
  bool automatic = true;
  cplx center{};
  double radius = 1.0;
};

struct SharingSpec {
  EquationSpec other;
  std::vector<SpherePoint> candidates;
  Level level;
};

struct GaugeSpec {
  double mu = 4.0;
  double kappa = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
  int m = 2;
  double delta = 0.1;
  std::vector<double> radii{1.0, 2.0, 5.0, 10.0};
};

struct RunSpec {
  int schema_version = kRunSpecSchemaVersion;
  DomainKind domain = DomainKind::kEuclidean;
  cplx reference{};
  EquationSpec equation;
  std::vector<SpherePoint> targets;
  GridSpec grid;
  int n_theta = 1024;
  std::uint64_t seed = 0;
  std::vector<std::string> checks;
  RegionSpec region;
  int puiseux_order = 4;
  std::optional<SharingSpec> sharing;
  GaugeSpec gauges;
  double calibration_fraction = 0.25;
  std::string output_dir;

  bool wants(const std::string& check) const;
};

const std::vector<std::string>& known_checks();

// Throws ConfigInvalid naming the offending field (e.g. "r-grid.count").
RunSpec parse_run_spec(const std::string& json_text);
RunSpec load_run_spec(const std::filesystem::path& path);

// Canonical JSON form; parse_run_spec(serialize_run_spec(s)) reproduces s.
std::string serialize_run_spec(const RunSpec& spec);

// Parses "inf", a number, a "p/q" string or an [re, im] pair.
SpherePoint parse_value_text(const std::string& text);
std::string format_value(const SpherePoint& a);

}  // namespace algebroid
