#include "algebroid/radcalc.hpp"

#include <numeric>

#include "algebroid/errors.hpp"

namespace algebroid {

namespace {

using cd = std::complex<double>;

bool passes(const Hyperplane& h, const std::vector<cd>& point, double tol) {
  return std::abs(point[static_cast<std::size_t>(h.var)] - h.value) <= tol * (1.0 + std::abs(h.value));
}

}  // namespace

void validate(const RadicalExpr& expr) {
  if (expr.variables < 1) fail(ErrorCode::kInvalidArgument, "radical expression needs at least one variable");
  for (const auto& term : expr.terms)
    for (const auto& f : term.factors) {
      if (f.index < 1) fail(ErrorCode::kInvalidArgument, "radical index must be positive");
      if (f.index >= 2 && f.locus.empty()) fail(ErrorCode::kInvalidArgument, "radical factor without branch locus");
      for (const auto& h : f.locus)
        if (h.var < 0 || h.var >= expr.variables)
          fail(ErrorCode::kInvalidArgument, "branch locus refers to an unknown variable");
    }
}

long long valence(const RadicalExpr& expr) {
  validate(expr);
  long long total = 1;
  for (const auto& term : expr.terms) {
    long long v = 1;
    for (const auto& f : term.factors)
      if (f.index >= 2) v = std::lcm(v, static_cast<long long>(f.index));
    total *= v;
  }
  return total;
}

long long branch_order(const RadicalExpr& expr, const std::vector<cd>& point, double tol) {
  validate(expr);
  if (static_cast<int>(point.size()) != expr.variables)
    fail(ErrorCode::kInvalidArgument, "query point dimension does not match the expression");
  long long cycles = 1;
  bool any = false;
  for (const auto& term : expr.terms) {
    for (const auto& f : term.factors) {
      if (f.index < 2) continue;
      long long local = 1;
      for (const auto& h : f.locus)
        if (passes(h, point, tol)) local = std::lcm(local, static_cast<long long>(f.index));
      if (local > 1) any = true;
      cycles *= local;
    }
  }
  if (!any) fail(ErrorCode::kNotABranchPoint, "no branch locus passes through the query point");
  return cycles - 1;
}

RadicalExpr paper_example_radical() {
  const cd i{0.0, 1.0};
  RadicalExpr e;
  e.variables = 3;
  e.terms = {
      {{{1, {}, "z2"}, {3, {{0, 1.0}}, "cbrt(z1-1)"}}},
      {{{1, {}, "-z3"}, {2, {{1, 0.0}, {2, 0.0}}, "sqrt(z2*z3)"}, {4, {{0, 2.0 * i}}, "(z1-2i)^(1/4)"}}},
      {{{1, {}, "z1"}, {2, {{1, 3.0 * i}}, "sqrt(z2-3i)"}, {3, {{2, 4.0 * i}}, "cbrt(z3-4i)"}}},
  };
  return e;
}

std::vector<NamedPoint> paper_example_points() {
  const cd i{0.0, 1.0};
  return {
      {"P1", {2.0 * i, 0.0, 1.0}},
      {"P2", {0.0, 3.0 * i, 4.0 * i}},
      {"P3", {1.0, 0.0, 4.0 * i}},
      {"P4", {1.0, 0.0, 0.0}},
  };
}

std::string to_string(const RadicalExpr& expr) {
  std::string out;
  for (std::size_t t = 0; t < expr.terms.size(); ++t) {
    if (t > 0) out += " + ";
    const auto& factors = expr.terms[t].factors;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k > 0) out += "*";
      out += factors[k].text.empty() ? "[" + std::to_string(factors[k].index) + "]" : factors[k].text;
    }
  }
  return out;
}

}  // namespace algebroid
