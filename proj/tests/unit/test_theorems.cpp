#include <doctest.h>

#include <cmath>
#include <random>

#include "algebroid/errors.hpp"
#include "algebroid/presets.hpp"
#include "algebroid/theorems.hpp"
#include "criteria_oracle.hpp"

using namespace algebroid;

namespace {

const DomainModel kPlane(DomainKind::kEuclidean);
const DomainModel kDisc(DomainKind::kPoincare);

std::vector<double> e_grid(double lo, double hi, int count) { return geometric_grid(std::exp(lo), std::exp(hi), count); }

CriterionInput all_levels(int q, Level k, std::vector<int> sheets, int varsigma, int mu = 1, int nu = 1) {
  CriterionInput in;
  in.mu = mu;
  in.nu = nu;
  in.k.assign(static_cast<std::size_t>(q), k);
  in.sheet_counts = std::move(sheets);
  in.varsigma = varsigma;
  return in;
}

}  // namespace

TEST_CASE("FMT residual examples") {
  const auto eq = preset_equation("sqrt-z");
  const DomainModel shifted(DomainKind::kEuclidean, 0.1);
  const auto led = fmt_residual(eq, shifted, 1.0, e_grid(1, 6, 12));
  CHECK(led.verdict);
  for (const auto& row : led.rows) CHECK(row.lhs <= std::log(2.0) + 5e-5);
  try {
    fmt_residual(eq, kPlane, 0.0, e_grid(1, 6, 12));
    FAIL("expected ValueAtReference");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kValueAtReference);
  }
  const auto mob = fmt_residual(preset_equation("mobius"), kPlane, 1.0, e_grid(1, 6, 12));
  CHECK(mob.verdict);
  for (const auto& row : mob.rows) CHECK(row.lhs <= std::log(2.0) + 5e-5);
}

TEST_CASE("FMT residual stays below its bound across the corpus") {
  struct Case {
    const char* name;
    cplx a;
  };
  const std::vector<Case> corpus{{"sqrt-z-minus-1", 1.0},        {"sqrt-z-minus-1", -1.0}, {"sqrt-z-minus-1", cplx(0, 2)},
                                 {"rational-quadratic", 2.0},    {"mobius", -3.0},         {"cbrt-z-minus-1", 0.5},
                                 {"sqrt-quartic", cplx(1, 1)}};
  for (const auto& c : corpus) {
    CAPTURE(std::string(c.name));
    for (const auto& dom : {kPlane, kDisc}) {
      // Disc radii stay below 12 so that tanh(r/2) remains distinguishable from 1.
      const double hi = dom.kind() == DomainKind::kPoincare ? std::log(12.0) : 5.0;
      const auto led = fmt_residual(preset_equation(c.name), dom, c.a, e_grid(0.25, hi, 10));
      CHECK(led.verdict);
      const double bound = std::log(std::max(1.0, std::abs(c.a))) + std::log(2.0);
      for (const auto& row : led.rows) CHECK(row.lhs <= bound + 5e-5);
    }
  }
}

TEST_CASE("branch divisor bound examples") {
  const auto led = branch_divisor_bound(preset_equation("sqrt-z-minus-1"), kPlane, e_grid(1, 6, 12));
  CHECK(led.verdict);
  REQUIRE(led.diagnostic.size() == led.rows.size());
  for (std::size_t i = 0; i < led.rows.size(); ++i)
    CHECK(std::abs(led.diagnostic[i] - 0.5 * std::log(led.rows[i].r)) < 1e-3);
  for (std::size_t i = 1; i < led.rows.size(); ++i) CHECK(led.rows[i].margin >= led.rows[i - 1].margin - 1e-9);
  const auto lin = branch_divisor_bound(preset_equation("mobius"), kPlane, e_grid(1, 6, 12));
  CHECK(lin.verdict);
  for (const auto& row : lin.rows) CHECK(row.lhs == 0.0);
  const auto cube = branch_divisor_bound(preset_equation("cbrt-z-minus-1"), kPlane, e_grid(1, 6, 12));
  CHECK(cube.verdict);
  for (const auto& row : cube.rows) CHECK(row.lhs == doctest::Approx(2.0 / 3.0 * std::log(row.r)).epsilon(1e-9));
}

TEST_CASE("SMT ledgers") {
  SUBCASE("q < 2 nu is structurally satisfied") {
    const DomainModel shifted(DomainKind::kEuclidean, 0.1);
    const auto led = smt_check(preset_equation("sqrt-z"), shifted,
                               {SpherePoint::finite(1.0), SpherePoint::finite(-1.0), SpherePoint::at_infinity()},
                               e_grid(1, 6, 16));
    CHECK(led.verdict);
    for (const auto& row : led.rows) CHECK(row.pass);
  }
  SUBCASE("rational function with three values") {
    for (const auto& dom : {kPlane, kDisc}) {
      const auto led = smt_check(preset_equation("rational-quadratic"), dom,
                                 {SpherePoint::finite(2.0), SpherePoint::finite(-1.0), SpherePoint::finite(cplx(0, 3))},
                                 e_grid(0.25, dom.kind() == DomainKind::kPoincare ? std::log(12.0) : 6.0, 64));
      CHECK(led.exceptional_fraction <= 0.1);
      CHECK(led.verdict);
    }
  }
}

TEST_CASE("defect relation examples") {
  const DomainModel shifted(DomainKind::kEuclidean, 0.1);
  const auto grid = e_grid(1, 8, 16);
  const auto one = defect_relation(preset_equation("sqrt-z"), shifted, {SpherePoint::at_infinity()}, grid);
  CHECK(one.sum == doctest::Approx(1.0));
  CHECK(one.verdict);
  const auto four = defect_relation(
      preset_equation("sqrt-z"), shifted,
      {SpherePoint::finite(0.0), SpherePoint::finite(1.0), SpherePoint::finite(-1.0), SpherePoint::at_infinity()}, grid);
  CHECK(four.sum <= 4.0 + 0.05);
  CHECK(four.verdict);
  const auto poly = AlgebroidEquation({-CPoly({1.0, 0.0, 1.0}), CPoly::constant(1.0)});
  const auto p = defect_relation(poly, kPlane, {SpherePoint::at_infinity(), SpherePoint::finite(3.0)}, grid);
  CHECK(p.defects[0].simple_defect == doctest::Approx(1.0));
  CHECK(p.defects[1].simple_defect < 0.05);
  CHECK(p.sum <= 2.05);
}

TEST_CASE("logarithmic derivative lemma") {
  const auto monomial = AlgebroidEquation({-CPoly::monomial(3), CPoly::constant(1.0)});
  const double r = 10.0;
  CHECK(log_derivative_proximity(monomial, kPlane, r) == doctest::Approx(0.0));
  CHECK(log_derivative_proximity(monomial, kPlane, 1.0) == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  const auto led = ldl_check(preset_equation("mobius"), kPlane, e_grid(0.25, 6, 32));
  CHECK(led.verdict);
  const auto constant = AlgebroidEquation({CPoly::constant(-2.0), CPoly::constant(1.0)});
  CHECK(log_derivative_proximity(constant, kPlane, 3.0) == 0.0);
  CHECK_THROWS_AS(ldl_check(preset_equation("sqrt-z"), kPlane, e_grid(0.25, 6, 32)), Error);
}

TEST_CASE("upper-bound calibration") {
  const std::vector<std::vector<double>> f{{1.0, 1.0}, {2.0, 1.0}, {3.0, 1.0}};
  const std::vector<double> t{2.0, 4.5, 6.0};
  const auto k = calibrate_upper_bound(f, t);
  REQUIRE(k.size() == 2);
  CHECK(k[0] >= 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(k[0] * f[i][0] + k[1] >= t[i] - 1e-12);
  // Decreasing targets force the slope to zero.
  const auto z = calibrate_upper_bound(f, {3.0, 2.0, 1.0});
  CHECK(z[0] == 0.0);
  CHECK(z[1] == doctest::Approx(3.0));
}

TEST_CASE("dependence and uniqueness examples") {
  const auto five = all_levels(5, std::nullopt, {1, 1}, 1);
  CHECK(dependence_gamma(five) == Rational(1));
  for (int s = 1; s <= 4; ++s)
    for (int q = 1; q <= 20; ++q) {
      CHECK(dependence_gamma0(all_levels(q, std::nullopt, {s, s}, s)) == Rational(q - 4 * s));
      CHECK(dependence_gamma0(all_levels(q, Level{1}, {s, s}, s)) == Rational(q, 2) - 3 * s);
    }
  CHECK(uniqueness_condition(five) == std::pair<bool, bool>{true, true});
  CHECK(uniqueness_condition(all_levels(4, std::nullopt, {1, 1}, 1)) == std::pair<bool, bool>{false, false});
  for (int m = 1; m <= 5; ++m) {
    const auto in = all_levels(4 * m + 1, std::nullopt, {m, m}, m, m, m);
    CHECK(uniqueness_margins(in).first == Rational(1));
    CHECK(uniqueness_margins(in).second == Rational(1));
  }
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
  CHECK(to_string(Rational(4)) == "4");
}

TEST_CASE("criteria agree with an independent rational evaluator") {
  std::mt19937_64 rng(2718);
  for (int t = 0; t < 1000; ++t) {
    const auto raw = oracle::random_criterion(rng);
    const auto in = oracle::to_input(raw);
    CHECK(oracle::to_big(dependence_gamma(in)) == oracle::gamma(raw));
    CHECK(oracle::to_big(dependence_gamma0(in)) == oracle::gamma0(raw));
    const auto [a, b] = uniqueness_margins(in);
    const auto [oa, ob] = oracle::uniqueness_margins(raw);
    CHECK(oracle::to_big(a) == oa);
    CHECK(oracle::to_big(b) == ob);
    CHECK(oracle::criterion_agrees(raw));
  }
}

TEST_CASE("sharing analyzer") {
  const std::vector<SpherePoint> cands{SpherePoint::finite(0.0), SpherePoint::finite(1.0), SpherePoint::finite(-1.0),
                                       SpherePoint::finite(2.0), SpherePoint::at_infinity()};
  SUBCASE("identical functions") {
    // Two-valued functions need 2 mu + 2 nu + 1 = 9 shared values.
    auto nine = cands;
    for (const cplx a : {cplx(0, 1), cplx(0, -1), cplx(3, 0), cplx(-2, 0)}) nine.push_back(SpherePoint::finite(a));
    const auto eq = preset_equation("sqrt-z");
    const auto rep = sharing_analyzer(eq, eq, kPlane, nine, 3.0);
    CHECK(rep.shared_count == 9);
    CHECK(rep.identity_forced);
    CHECK(rep.identity_observed);
  }
  SUBCASE("nearby but distinct square roots") {
    const auto rep =
        sharing_analyzer(preset_equation("sqrt-z"), preset_equation("sqrt-z-shifted"), kPlane, cands, 3.0);
    CHECK(rep.nonempty_shared_count == 0);
    CHECK_FALSE(rep.identity_forced);
    CHECK_FALSE(rep.identity_observed);
  }
  SUBCASE("four shared values") {
    const auto rep = sharing_analyzer(preset_equation("exp-taylor"), preset_equation("exp-taylor-reflected"), kPlane,
                                      cands, 4.0);
    CHECK(rep.shared_count == 4);
    CHECK_FALSE(rep.identity_forced);
    CHECK_FALSE(rep.identity_observed);
  }
}
