#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "algebroid/errors.hpp"
#include "algebroid/radcalc.hpp"

using namespace algebroid;
using cd = std::complex<double>;

namespace {

RadicalFactor radical(int index, std::vector<Hyperplane> locus) { return {index, std::move(locus), ""}; }

RadicalExpr single(int index, int vars, int var, cd value) {
  RadicalExpr e;
  e.variables = vars;
  e.terms.push_back({{radical(index, {{var, value}})}});
  return e;
}

}  // namespace

TEST_CASE("published valence and branch orders") {
  const auto w = paper_example_radical();
  CHECK(valence(w) == 72);
  const auto pts = paper_example_points();
  REQUIRE(pts.size() == 4);
  const std::vector<long long> expected{7, 5, 17, 5};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CAPTURE(pts[i].name);
    CHECK(branch_order(w, pts[i].point) == expected[i]);
  }
}

TEST_CASE("valence examples") {
  CHECK(valence(single(2, 1, 0, 0.0)) == 2);
  RadicalExpr prod;
  prod.variables = 3;
  prod.terms.push_back({{radical(2, {{1, 0.0}, {2, 0.0}}), radical(4, {{0, cd(0, 2)}})}});
  CHECK(valence(prod) == 4);
}

TEST_CASE("single radical factor has order index - 1 on its locus") {
  for (int k = 2; k <= 9; ++k) {
    CHECK(branch_order(single(k, 2, 1, cd(1, 1)), {cd(5, 0), cd(1, 1)}) == k - 1);
    CHECK(valence(single(k, 2, 1, cd(1, 1))) == k);
  }
}

TEST_CASE("points off every locus are rejected") {
  const auto w = paper_example_radical();
  try {
    branch_order(w, {cd(5, 5), cd(7, 0), cd(9, 0)});
    FAIL("expected NotABranchPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotABranchPoint);
  }
  CHECK_THROWS_AS(branch_order(w, {cd(1, 0)}), Error);
}

TEST_CASE("malformed expressions are rejected") {
  RadicalExpr e = single(0, 1, 0, 0.0);
  CHECK_THROWS_AS(validate(e), Error);
  e = single(2, 1, 3, 0.0);
  CHECK_THROWS_AS(validate(e), Error);
  e = single(2, 1, 0, 0.0);
  e.terms[0].factors[0].locus.clear();
  CHECK_THROWS_AS(validate(e), Error);
}

TEST_CASE("valence is invariant under reordering") {
  auto w = paper_example_radical();
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::shuffle(w.terms.begin(), w.terms.end(), rng);
    for (auto& term : w.terms) std::shuffle(term.factors.begin(), term.factors.end(), rng);
    CHECK(valence(w) == 72);
    for (const auto& p : paper_example_points()) CHECK(branch_order(w, p.point) >= 0);
  }
}

TEST_CASE("order + 1 <= valence for coprime indices within each term") {
  // With pairwise coprime indices inside a product the lcm rule and the
  // multiplicative rule agree, so the local cycle count is a valence bound.
  const std::vector<std::vector<int>> index_sets{{2, 3}, {2, 5}, {3, 4}, {2, 3, 5}, {3, 5, 7}, {4}};
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> var(0, 2), cst(0, 2), nterms(1, 3), pick(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    RadicalExpr e;
    e.variables = 3;
    const int nt = nterms(rng);
    for (int t = 0; t < nt; ++t) {
      RadicalTerm term;
      for (const int k : index_sets[static_cast<std::size_t>(pick(rng))])
        term.factors.push_back(radical(k, {{var(rng), cd(cst(rng), 0)}}));
      e.terms.push_back(term);
    }
    const long long v = valence(e);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          long long order = -1;
          try {
            order = branch_order(e, {cd(a, 0), cd(b, 0), cd(c, 0)});
          } catch (const Error& err) {
            CHECK(err.code() == ErrorCode::kNotABranchPoint);
            continue;
          }
          CHECK(order + 1 <= v);
        }
  }
}

TEST_CASE("text rendering mentions every factor") {
  const std::string s = to_string(paper_example_radical());
  CHECK(s.find("z1") != std::string::npos);
  CHECK(s.find("z3") != std::string::npos);
}
