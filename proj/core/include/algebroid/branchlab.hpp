#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "algebroid/permutation.hpp"
#include "algebroid/polyalg.hpp"

namespace algebroid {

enum class CriticalKind { kMultipleRoot, kPoleBranch, kBoth };

std::string_view to_string(CriticalKind kind);

// A zero of the discriminant J or of the leading coefficient A_nu.
struct CriticalPoint {
  cplx location{};
  CriticalKind kind = CriticalKind::kMultipleRoot;
  int discriminant_multiplicity = 0;  // 0 when J does not vanish here
};

struct TrackOptions {
  PolyalgOptions polyalg{};
  // Minimum distance between the path and any critical point.
  double clearance = 1e-6;
  // A step is accepted only if every root moves (chordally) less than this
  // fraction of the minimal root separation.
  double max_displacement_fraction = 0.1;
  int newton_iterations = 12;
};

struct TrackResult {
  RootSet end;              // end.finite[i] continues start.finite[i]
  Permutation permutation;  // permutation[i] = start index nearest to end root i
  int steps = 0;
};

struct MonodromyOptions {
  TrackOptions track{};
  int circle_samples = 64;
  double radius_cap = 1.0;
  // Multiplies every loop radius; 0.5 reproduces the halving stability check.
  double radius_scale = 1.0;
  int basepoint_attempts = 24;
  bool parallel = true;
};

struct MonodromyLoop {
  CriticalPoint point;
  double radius = 0.0;
  cplx entry_point{};
  std::vector<cplx> entry_roots;  // base roots transported to entry_point
  Permutation permutation;
  std::vector<int> cycle_type;
  int branch_order = 0;
};

struct MonodromyCertificate {
  cplx basepoint{};
  std::vector<cplx> base_roots;
  // Loops are listed in the fixed convention: counterclockwise angle of
  // (c - basepoint) measured from the infinity corridor direction.
  std::vector<MonodromyLoop> loops;
  cplx infinity_direction{};
  double infinity_radius = 0.0;
  // Loop around infinity with positive orientation there (clockwise in z).
  Permutation infinity_permutation;
  bool transitive = false;
  // product of the loop permutations == inverse(infinity_permutation)
  bool product_consistent = false;

  std::vector<CriticalPoint> critical_points() const;
  std::vector<Permutation> permutations() const;
  std::vector<int> branch_orders() const;
  // Ramification points (branch order > 0) with their orders.
  std::vector<std::pair<cplx, int>> branch_points() const;
};

// Zeros of J and A_nu in the plane, merged and classified.
std::vector<CriticalPoint> all_critical_points(const AlgebroidEquation& eq, const PolyalgOptions& opts = {});
std::vector<CriticalPoint> critical_points(const AlgebroidEquation& eq, const Disc& region,
                                           const PolyalgOptions& opts = {});

TrackResult track_roots(const AlgebroidEquation& eq, std::span<const cplx> path, const RootSet& start,
                        const TrackOptions& opts = {});
// Same, with the critical set supplied by the caller.
TrackResult track_roots(const AlgebroidEquation& eq, std::span<const cplx> path, const RootSet& start,
                        const TrackOptions& opts, std::span<const cplx> obstacles);

MonodromyCertificate monodromy(const AlgebroidEquation& eq, const Disc& region, std::uint64_t seed,
                               const MonodromyOptions& opts = {});
MonodromyCertificate monodromy(const AlgebroidEquation& eq, const Disc& region, cplx basepoint,
                               std::uint64_t seed, const MonodromyOptions& opts = {});

// Records the certificate's verdict on the equation.
void apply_irreducibility(AlgebroidEquation& eq, const MonodromyCertificate& cert);

// Closed polyline for a counterclockwise circle starting and ending at
// center + radius * e^{i start_angle}.
std::vector<cplx> circle_path(cplx center, double radius, double start_angle, int samples, int turns = 1);

// ---------------------------------------------------------------------------
// Newton-Puiseux expansions.

// The roots of one local cycle at a point near a branch point.
struct SheetCycle {
  cplx start_point{};
  std::vector<cplx> start_roots;
};

SheetCycle sheet_cycle(const MonodromyCertificate& cert, std::size_t loop_index, std::size_t cycle_index);

// u(zeta) = b0 + b_tau zeta^tau + ... with z = center + zeta^lambda. For a
// branch through a pole the expansion is of 1/w (reciprocal = true).
struct PuiseuxExpansion {
  cplx center{};
  int lambda = 1;
  int tau = 1;
  std::vector<cplx> coefficients;  // b_0, b_tau, b_{tau+1}, ..., b_order
  int truncation_order = 1;
  bool reciprocal = false;
  double ring_radius = 0.0;  // |zeta| of the fitting ring
  double fit_residual = 0.0;
  double substitution_residual = 0.0;

  // Coefficient of zeta^n (0 for 0 < n < tau or n > truncation_order).
  cplx coefficient(int n) const;
  // Value of the branch (w, not 1/w) at zeta.
  cplx branch_value(cplx zeta) const;
};

struct PuiseuxOptions {
  TrackOptions track{};
  double ring_radius = 0.25;  // in z; capped at half the distance to other critical points
  double zero_tol = 1e-9;     // Newton polygon coefficient cut-off, relative
};

PuiseuxExpansion puiseux_expand(const AlgebroidEquation& eq, cplx center, const SheetCycle& cycle, int order,
                                const PuiseuxOptions& opts = {});

// Exponents (as reduced fractions num/den) of the Newton polygon edges of
// psi(center + s, b0 + v), i.e. the possible leading orders v ~ s^{num/den}.
std::vector<std::pair<int, int>> newton_polygon_slopes(const AlgebroidEquation& eq, cplx center, cplx b0,
                                                       bool reciprocal, double zero_tol = 1e-9);

}  // namespace algebroid
