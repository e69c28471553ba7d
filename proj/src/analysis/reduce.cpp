#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "sfg/analysis.hpp"
#include "sfg/error.hpp"

namespace sfg {

namespace {

constexpr double kCancelTol = 1e-12;

// (prev - h * cur) / s. The constant term cancels by construction of h and is
// forced to zero; other coefficients that cancel to round-off are zeroed.
Poly next_remainder(const Poly& prev, const Poly& cur, double h) {
  const std::size_t len = std::max(prev.coeffs().size(), cur.coeffs().size());
  std::vector<double> v(len > 1 ? len - 1 : 1, 0.0);
  for (std::size_t k = 1; k < len; ++k) {
    const double a = prev[k];
    const double b = h * cur[k];
    const double d = a - b;
    v[k - 1] = std::abs(d) <= kCancelTol * std::max(std::abs(a), std::abs(b)) ? 0.0 : d;
  }
  return Poly(std::move(v));
}

}  // namespace

std::vector<double> taylor_coefficients(const Poly& num, const Poly& den, int count) {
  if (den[0] == 0.0) throw Error(ErrorCode::kInvalidArgument, "denominator vanishes at s = 0");
  std::vector<double> t(static_cast<std::size_t>(std::max(count, 0)), 0.0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    double acc = num[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= den[j] * t[k - j];
    t[k] = acc / den[0];
  }
  return t;
}

ReducedModel reduce_order_cf(const TransferFunction& tf, int r) {
  const Poly b = tf.numeric_numerator();
  const Poly a = tf.numeric_denominator();
  if (r < 1 || r > a.degree()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("reduced order must lie in [1, {}], got {}", a.degree(), r));
  }
  if (a[0] == 0.0) throw Error(ErrorCode::kInvalidArgument, "A(0) = 0: no expansion about s = 0");
  if (b.is_zero()) throw Error(ErrorCode::kInvalidArgument, "cannot reduce a zero transfer function");

  // Remainder sequence R0 = A, R1 = B, R(k+1) = (R(k-1) - h_k R(k)) / s with
  // h_k = R(k-1)(0) / R(k)(0).
  ReducedModel out;
  Poly prev = a;
  Poly cur = b;
  for (int k = 1; k <= 2 * r; ++k) {
    if (cur.is_zero()) break;  // the expansion terminated: exact
    const double lead = cur[0];
    if (std::abs(lead) <= kCancelTol * cur.max_abs()) {
      throw Error(ErrorCode::kSingularQuotient,
                  fmt::format("continued-fraction quotient {} divides by a zero constant term", k));
    }
    const double h = prev[0] / lead;
    out.quotients.push_back(h);
    Poly next = next_remainder(prev, cur, h);
    prev = std::move(cur);
    cur = std::move(next);
  }

  // Fold back from the innermost level: T = h_k + s / T_next, G = 1 / T_1.
  const auto& h = out.quotients;
  Poly t_num = Poly::constant(h.back());
  Poly t_den{1.0};
  for (std::size_t k = h.size() - 1; k-- > 0;) {
    Poly n = t_num * h[k] + shift_up(t_den, 1);
    t_den = std::move(t_num);
    t_num = std::move(n);
  }
  // G = t_den / t_num, scaled so the denominator's constant term is 1.
  const double scale = t_num[0];
  if (scale == 0.0) throw Error(ErrorCode::kSingularQuotient, "reduced model has a pole at s = 0");
  out.tf = TransferFunction::from_rational(RationalFn(t_den * (1.0 / scale), t_num * (1.0 / scale)));
  out.tf.variable = tf.variable;
  return out;
}

}  // namespace sfg
