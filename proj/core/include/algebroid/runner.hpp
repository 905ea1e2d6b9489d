#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "algebroid/runspec.hpp"

namespace algebroid {

// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_number(double v);
// Shortest round-trip representation.
std::string format_short(double v);

// Writes to a temporary sibling, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct RunOptions {
  std::filesystem::path out_dir;
  bool verbose = false;
  std::ostream* log = nullptr;
};

struct RunOutcome {
  // 0: every requested check passed; 1: a check failed or raised; 2: invalid configuration.
  int exit_code = 0;
  std::string summary;
  std::filesystem::path out_dir;
};

// Runs every requested check and writes report.json, curves.csv and
// summary.txt into opts.out_dir.
RunOutcome run(const RunSpec& spec, const RunOptions& opts);

// Nearest point on a fixed spiral around o at which none of the relevant
// divisors (targets, poles, critical points) sits.
cplx suggest_reference_shift(const AlgebroidEquation& eq, const std::vector<SpherePoint>& targets, cplx o);

}  // namespace algebroid
