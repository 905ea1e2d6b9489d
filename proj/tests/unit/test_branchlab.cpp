#include <doctest.h>

#include <algorithm>
#include <string>

#include "algebroid/branchlab.hpp"
#include "algebroid/errors.hpp"
#include "algebroid/presets.hpp"
#include "oracles.hpp"

using namespace algebroid;

namespace {

constexpr double kPi = 3.14159265358979323846;

RootSet start_set(cplx z, std::vector<cplx> roots) {
  RootSet s;
  s.point = z;
  s.finite = std::move(roots);
  return s;
}

// Reproduces every loop of the certificate by dense nearest-neighbour sampling.
void check_against_dense_oracle(const AlgebroidEquation& eq, const MonodromyCertificate& cert) {
  for (const auto& loop : cert.loops) {
    const auto entry = oracle::dense_track(eq, {cert.basepoint, loop.entry_point}, cert.base_roots, 4096);
    const auto perm = oracle::dense_circle_permutation(eq, loop.point.location, loop.radius,
                                                       std::arg(loop.entry_point - loop.point.location), entry, 4096);
    CHECK(perm == loop.permutation);
  }
}

int total_branch_order(const MonodromyCertificate& cert) {
  int s = 0;
  for (const int b : cert.branch_orders()) s += b;
  return s;
}

}  // namespace

TEST_CASE("critical point examples") {
  const Disc d{0.0, 2.0};
  auto cp = critical_points(preset_equation("sqrt-z"), d);
  REQUIRE(cp.size() == 1);
  CHECK(std::abs(cp[0].location) < 1e-12);
  CHECK(cp[0].kind == CriticalKind::kMultipleRoot);
  cp = critical_points(preset_equation("sqrt-z-minus-1"), d);
  REQUIRE(cp.size() == 1);
  CHECK(std::abs(cp[0].location - 1.0) < 1e-12);
  CHECK(cp[0].kind == CriticalKind::kMultipleRoot);
  cp = critical_points(preset_equation("pole-sqrt"), d);
  REQUIRE(cp.size() == 1);
  CHECK(std::abs(cp[0].location) < 1e-12);
  CHECK(cp[0].kind == CriticalKind::kPoleBranch);
  CHECK(critical_points(preset_equation("sqrt-z-minus-1"), Disc{0.0, 0.5}).empty());
  CHECK_THROWS_AS(critical_points(preset_equation("sqrt-z-minus-1"), Disc{0.0, 1.0}), Error);
}

TEST_CASE("track_roots examples") {
  const auto eq = preset_equation("sqrt-z");
  SUBCASE("full loop swaps the sheets") {
    const auto path = circle_path(0.0, 1.0, 0.0, 64);
    const auto r = track_roots(eq, path, start_set(1.0, {1.0, -1.0}));
    CHECK(r.permutation == Permutation{1, 0});
    CHECK(std::abs(r.end.finite[0] + 1.0) < 1e-10);
  }
  SUBCASE("real segment keeps the matching") {
    const std::vector<cplx> path{1.0, 4.0};
    const auto r = track_roots(eq, path, start_set(1.0, {1.0, -1.0}));
    CHECK(r.permutation == Permutation{0, 1});
    CHECK(std::abs(r.end.finite[0] - 2.0) < 1e-10);
    CHECK(std::abs(r.end.finite[1] + 2.0) < 1e-10);
  }
  SUBCASE("constant path") {
    const std::vector<cplx> path{2.0, 2.0, 2.0};
    const auto r = track_roots(eq, path, roots_at(eq, 2.0));
    CHECK(is_identity(r.permutation));
  }
  SUBCASE("path through a critical point") {
    const std::vector<cplx> path{-1.0, 1.0};
    try {
      track_roots(eq, path, start_set(-1.0, {cplx(0, 1), cplx(0, -1)}));
      FAIL("expected PathTooClose");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kPathTooClose);
    }
  }
}

TEST_CASE("track_roots follows the dense oracle on random circles") {
  const auto eq = preset_equation("sqrt-quartic");
  const std::vector<cplx> centers{0.0, 1.0, 2.0, cplx(1.5, 0.3), -1.0};
  for (const cplx c : centers)
    for (const double rho : {0.3, 0.8, 1.7, 3.0}) {
      const auto path = circle_path(c, rho, 0.4, 64);
      bool clear = true;
      for (const double p : {-2.0, -1.0, 1.0, 2.0}) clear = clear && std::abs(std::abs(c - p) - rho) > 0.05;
      if (!clear) continue;
      const auto start = roots_at(eq, path.front());
      const auto r = track_roots(eq, path, start);
      const auto ref = oracle::dense_circle_permutation(eq, c, rho, 0.4, start.finite, 4096);
      CHECK(r.permutation == ref);
    }
}

TEST_CASE("monodromy examples") {
  SUBCASE("square root") {
    const auto cert = monodromy(preset_equation("sqrt-z"), Disc{0.0, 2.0}, 7);
    REQUIRE(cert.loops.size() == 1);
    CHECK(cert.loops[0].permutation == Permutation{1, 0});
    CHECK(cert.loops[0].branch_order == 1);
    CHECK(cert.transitive);
    CHECK(cert.product_consistent);
  }
  SUBCASE("cube root") {
    const auto cert = monodromy(preset_equation("cbrt-z"), Disc{0.0, 2.0}, 7);
    REQUIRE(cert.loops.size() == 1);
    CHECK(cert.loops[0].cycle_type == std::vector<int>{3});
    CHECK(cert.loops[0].branch_order == 2);
    CHECK(cert.transitive);
    CHECK(cert.product_consistent);
  }
  SUBCASE("reducible probe") {
    auto eq = preset_equation("sqrt-z-squared");
    const auto cert = monodromy(eq, Disc{0.0, 2.0}, 7);
    REQUIRE(cert.loops.size() == 1);
    CHECK(is_identity(cert.loops[0].permutation));
    CHECK_FALSE(cert.transitive);
    apply_irreducibility(eq, cert);
    CHECK(eq.irreducibility() == Irreducibility::kRefuted);
  }
  SUBCASE("pole branch") {
    const auto cert = monodromy(preset_equation("pole-sqrt"), Disc{0.0, 2.0}, 7);
    REQUIRE(cert.loops.size() == 1);
    CHECK(cert.loops[0].branch_order == 1);
    CHECK(cert.product_consistent);
  }
}

TEST_CASE("monodromy matches dense circle sampling") {
  for (const std::string name : {"sqrt-z", "cbrt-z", "sqrt-two-points", "sqrt-quartic", "sqrt-z-squared", "cusp"}) {
    CAPTURE(name);
    const auto eq = preset_equation(name);
    const auto cert = monodromy(eq, Disc{0.0, 3.0}, 42);
    check_against_dense_oracle(eq, cert);
    CHECK(cert.product_consistent);
  }
}

TEST_CASE("certificate invariants") {
  for (const std::string name : {"sqrt-two-points", "sqrt-quartic", "cbrt-z-minus-1", "rational-quadratic", "cusp"}) {
    CAPTURE(name);
    const auto eq = preset_equation(name);
    const auto cert = monodromy(eq, Disc{0.0, 3.0}, 1);
    for (const auto& loop : cert.loops) {
      int sum = 0;
      for (const int c : loop.cycle_type) sum += c;
      CHECK(sum == eq.nu());
      CHECK(loop.branch_order == eq.nu() - static_cast<int>(loop.cycle_type.size()));
      CHECK(is_permutation(loop.permutation));
    }
    CHECK(cert.product_consistent);
  }
}

TEST_CASE("loop permutations are stable under radius halving") {
  for (const std::string name : {"sqrt-two-points", "sqrt-quartic", "cbrt-z-minus-1", "cusp"}) {
    CAPTURE(name);
    const auto eq = preset_equation(name);
    MonodromyOptions half;
    half.radius_scale = 0.5;
    const auto a = monodromy(eq, Disc{0.0, 3.0}, cplx(0.3, 2.2), 3);
    const auto b = monodromy(eq, Disc{0.0, 3.0}, cplx(0.3, 2.2), 3, half);
    CHECK(a.permutations() == b.permutations());
  }
}

TEST_CASE("monodromy is independent of parallel execution") {
  const auto eq = preset_equation("sqrt-quartic");
  MonodromyOptions serial;
  serial.parallel = false;
  const auto a = monodromy(eq, Disc{0.0, 3.0}, 5);
  const auto b = monodromy(eq, Disc{0.0, 3.0}, 5, serial);
  CHECK(a.permutations() == b.permutations());
  CHECK(a.basepoint == b.basepoint);
}

TEST_CASE("total branch order matches Riemann-Hurwitz for hyperelliptic curves") {
  // w^2 = p(z) with simple roots: every root is a simple branch point, and
  // infinity is one when deg p is odd.
  CHECK(total_branch_order(monodromy(preset_equation("sqrt-quartic"), Disc{0.0, 3.0}, 2)) == 4);
  const auto cert = monodromy(preset_equation("sqrt-two-points"), Disc{0.0, 3.0}, 2);
  CHECK(total_branch_order(cert) == 2);
  CHECK(is_identity(cert.infinity_permutation));
  const auto cube = monodromy(preset_equation("cbrt-z"), Disc{0.0, 2.0}, 2);
  CHECK(cycle_type(cube.infinity_permutation) == std::vector<int>{3});
}

TEST_CASE("too close critical points are rejected") {
  const auto eq = AlgebroidEquation({-(CPoly::linear(0.0) * CPoly::linear(1e-4)), CPoly{}, CPoly::constant(1.0)});
  try {
    monodromy(eq, Disc{0.0, 2.0}, 1);
    FAIL("expected CriticalPointsTooClose");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCriticalPointsTooClose);
  }
}

TEST_CASE("Puiseux examples") {
  SUBCASE("square root at 0") {
    const auto eq = preset_equation("sqrt-z");
    const auto cert = monodromy(eq, Disc{0.0, 2.0}, 1);
    const auto p = puiseux_expand(eq, 0.0, sheet_cycle(cert, 0, 0), 4);
    CHECK(p.lambda == 2);
    CHECK(p.tau == 1);
    CHECK(std::abs(p.coefficient(0)) < 1e-10);
    CHECK(std::abs(p.coefficient(1) - 1.0) < 1e-10);
    for (int n = 2; n <= 4; ++n) CHECK(std::abs(p.coefficient(n)) < 1e-10);
    CHECK(p.substitution_residual < 1e-10);
  }
  SUBCASE("shifted square root") {
    const auto eq = preset_equation("sqrt-z-minus-1");
    const auto cert = monodromy(eq, Disc{0.0, 2.0}, 1);
    const auto p = puiseux_expand(eq, 1.0, sheet_cycle(cert, 0, 0), 3);
    CHECK(p.lambda == 2);
    CHECK(std::abs(p.coefficient(1) - 1.0) < 1e-10);
    CHECK(std::abs(p.coefficient(0)) < 1e-10);
  }
  SUBCASE("cusp") {
    const auto eq = preset_equation("cusp");
    const auto cert = monodromy(eq, Disc{0.0, 2.0}, 1);
    REQUIRE(cert.loops.size() == 1);
    const auto p = puiseux_expand(eq, 0.0, sheet_cycle(cert, 0, 0), 5);
    CHECK(p.lambda == 2);
    CHECK(p.tau == 3);
    CHECK(std::abs(p.coefficient(0) - 1.0) < 1e-10);
    CHECK(std::abs(p.coefficient(3) - 1.0) < 1e-8);
    CHECK(std::abs(p.coefficient(4)) < 1e-8);
    CHECK(std::abs(p.coefficient(5)) < 1e-8);
  }
  SUBCASE("cube root") {
    const auto eq = preset_equation("cbrt-z");
    const auto cert = monodromy(eq, Disc{0.0, 2.0}, 1);
    const auto p = puiseux_expand(eq, 0.0, sheet_cycle(cert, 0, 0), 4);
    CHECK(p.lambda == 3);
    CHECK(std::abs(p.coefficient(1) - 1.0) < 1e-10);
  }
  SUBCASE("branch through a pole") {
    const auto eq = preset_equation("pole-sqrt");
    const auto cert = monodromy(eq, Disc{0.0, 2.0}, 1);
    const auto p = puiseux_expand(eq, 0.0, sheet_cycle(cert, 0, 0), 4);
    CHECK(p.reciprocal);
    CHECK(p.lambda == 2);
    // 1/w = zeta exactly, so w(zeta) = 1/zeta.
    const cplx zeta{0.1, 0.05};
    CHECK(std::abs(p.branch_value(zeta) * zeta - 1.0) < 1e-8);
  }
}

TEST_CASE("Puiseux series reproduce one branch on a ring") {
  const auto eq = preset_equation("sqrt-two-points");
  const auto cert = monodromy(eq, Disc{0.0, 3.0}, 9);
  for (std::size_t k = 0; k < cert.loops.size(); ++k) {
    const cplx c = cert.loops[k].point.location;
    const auto p = puiseux_expand(eq, c, sheet_cycle(cert, k, 0), 8);
    CHECK(p.lambda == 2);
    CHECK(p.substitution_residual <= std::max(1e-6, 10.0 * std::pow(p.ring_radius, 9)));
    for (int j = 0; j < 8; ++j) {
      const cplx zeta = std::polar(0.5 * p.ring_radius, 2.0 * kPi * j / 8.0);
      CHECK(std::abs(eval_psi(eq, c + std::pow(zeta, 2), p.branch_value(zeta))) < 1e-6);
    }
  }
}

TEST_CASE("Newton polygon slopes") {
  const auto cusp = newton_polygon_slopes(preset_equation("cusp"), 0.0, 1.0, false);
  REQUIRE(cusp.size() == 1);
  CHECK(cusp[0] == std::pair<int, int>{3, 2});
  const auto cube = newton_polygon_slopes(preset_equation("cbrt-z"), 0.0, 0.0, false);
  REQUIRE(cube.size() == 1);
  CHECK(cube[0] == std::pair<int, int>{1, 3});
}

TEST_CASE("Puiseux rejects bad arguments") {
  const auto eq = preset_equation("sqrt-z");
  const auto cert = monodromy(eq, Disc{0.0, 2.0}, 1);
  CHECK_THROWS_AS(puiseux_expand(eq, 0.0, sheet_cycle(cert, 0, 0), 0), Error);
  CHECK_THROWS_AS(sheet_cycle(cert, 3, 0), Error);
}
