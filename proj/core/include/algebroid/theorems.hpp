#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebroid/nevan.hpp"

namespace algebroid {

struct LedgerRow {
  double r = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs, or bound - residual
  bool pass = false;
  bool calibration = false;
};

struct TheoremLedger {
  std::string id;
  std::vector<LedgerRow> rows;
  // Failing fraction over the rows outside the calibration prefix.
  double exceptional_fraction = 0.0;
  bool verdict = false;
  std::vector<double> constants;  // calibrated constants, if any
  // Extra per-row diagnostic (e.g. slack for the branch bound).
  std::vector<double> diagnostic;
  std::string diagnostic_name;
};

struct TheoremOptions {
  NevanOptions nevan{};
  MonodromyOptions monodromy{};
  std::uint64_t seed = 0;
  double calibration_fraction = 0.25;
  double max_exceptional_fraction = 0.1;
  double fmt_epsilon = 5e-5;
  double bran_epsilon = 1e-9;
  double defect_epsilon = 0.05;
};

// Residual |T(r, 1/(w-a)) - T(r, w) + (1/nu) log|psi(o,a)/A_nu(o)|| against
// log+|a| + log 2 at every radius.
TheoremLedger fmt_residual(const AlgebroidEquation& eq, const DomainModel& dom, cplx a,
                           const std::vector<double>& r_grid, const TheoremOptions& opts = {});

// N_bran <= (2nu - 2) T + C with C calibrated at the first radius. The
// diagnostic column holds the slack (2nu - 2) T - N_bran.
TheoremLedger branch_divisor_bound(const AlgebroidEquation& eq, const DomainModel& dom,
                                   const std::vector<double>& r_grid, const BranchDivisor& bran,
                                   const TheoremOptions& opts = {});
TheoremLedger branch_divisor_bound(const AlgebroidEquation& eq, const DomainModel& dom,
                                   const std::vector<double>& r_grid, const TheoremOptions& opts = {});

// (q - 2nu) T + T_ricci <= sum Nbar_j + k1 log+ T + k2 (log r | r) + k3.
// The diagnostic column holds the growth trend -T_ricci / T.
TheoremLedger smt_check(const AlgebroidEquation& eq, const DomainModel& dom, const std::vector<SpherePoint>& values,
                        const std::vector<double>& r_grid, const TheoremOptions& opts = {});
// Same, on precomputed samples whose value entries are the SMT targets.
TheoremLedger smt_from_samples(int nu, const DomainModel& dom, const std::vector<NevanlinnaSample>& samples,
                               const TheoremOptions& opts = {});

struct DefectRelation {
  std::vector<DefectEstimate> defects;
  double sum = 0.0;
  double bound = 0.0;
  bool verdict = false;
};

DefectRelation defect_relation(const AlgebroidEquation& eq, const DomainModel& dom,
                               const std::vector<SpherePoint>& values, const std::vector<double>& r_grid,
                               const TheoremOptions& opts = {});
DefectRelation defect_relation_from_samples(int nu, const std::vector<NevanlinnaSample>& samples,
                                            const TheoremOptions& opts = {});

// m(r, f'/f) for f = -A_0/A_1 against k log+ T + k' (log r | r) + k''.
TheoremLedger ldl_check(const AlgebroidEquation& eq, const DomainModel& dom, const std::vector<double>& r_grid,
                        const TheoremOptions& opts = {});
// m(r, f'/f) on its own.
double log_derivative_proximity(const AlgebroidEquation& eq, const DomainModel& dom, double r,
                                const NevanOptions& opts = {});

// Nonnegative least squares over all columns (the last one is the
// intercept), then the intercept is raised until every calibration row
// satisfies features . k >= target.
std::vector<double> calibrate_upper_bound(const std::vector<std::vector<double>>& features,
                                          const std::vector<double>& target);

// ---------------------------------------------------------------------------
// Arithmetic criteria for dependence and uniqueness.

using Rational = boost::rational<long long>;
// Truncation level; nullopt stands for infinity.
using Level = std::optional<long long>;

struct CriterionInput {
  int mu = 1;
  int nu = 1;
  std::vector<Level> k;          // q levels
  std::vector<int> sheet_counts;  // nu_1 ... nu_l
  int varsigma = 1;

  int q() const { return static_cast<int>(k.size()); }
  Level k0() const;
  int nu0() const;
};

// k/(k+1), 1 at infinity.
Rational level_ratio(const Level& k);
// 1/(k+1), 0 at infinity.
Rational level_reciprocal(const Level& k);

Rational dependence_gamma(const CriterionInput& in);
Rational dependence_gamma0(const CriterionInput& in);
// Both inequalities of the uniqueness system: (mu, nu) and (nu, mu).
std::pair<bool, bool> uniqueness_condition(const CriterionInput& in);
// Left-hand sides of the system.
std::pair<Rational, Rational> uniqueness_margins(const CriterionInput& in);

std::string to_string(const Rational& x);

struct SharedValue {
  SpherePoint a;
  std::vector<cplx> support_u;
  std::vector<cplx> support_v;
  bool shared = false;
};

struct SharingReport {
  std::vector<SharedValue> values;
  int shared_count = 0;           // equal supports, empty ones included
  int nonempty_shared_count = 0;  // equal nonempty supports
  std::pair<bool, bool> condition{false, false};
  bool identity_forced = false;
  bool identity_observed = false;
};

// Compares truncated supports of u*a and v*a on Delta(r_max).
SharingReport sharing_analyzer(const AlgebroidEquation& u, const AlgebroidEquation& v, const DomainModel& dom,
                               const std::vector<SpherePoint>& candidates, double r_max, Level level = std::nullopt,
                               const PolyalgOptions& opts = {});

}  // namespace algebroid
