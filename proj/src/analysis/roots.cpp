#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "sfg/analysis.hpp"
#include "sfg/error.hpp"

namespace sfg {

namespace {

// Parlett-Reinsch balancing by powers of two; leaves eigenvalues unchanged.
void balance(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  constexpr double kGamma = 0.95;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(m(i, j));
        col += std::abs(m(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col, exponent);
      const double scaled_row = std::ldexp(row, -exponent);
      if (scaled_col + scaled_row < kGamma * (col + row)) {
        changed = true;
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
}

Complex polish(const Poly& p, const Poly& dp, Complex z) {
  double best = std::abs(p(z));
  for (int it = 0; it < 4 && best > 0.0; ++it) {
    const Complex d = dp(z);
    if (std::abs(d) == 0.0) break;
    const Complex next = z - p(z) / d;
    const double r = std::abs(p(next));
    if (!(r < best)) break;
    z = next;
    best = r;
  }
  return z;
}

}  // namespace

RootSet find_roots(const Poly& p) {
  RootSet out;
  if (p.is_zero()) throw Error(ErrorCode::kInvalidArgument, "the zero polynomial has no finite root set");
  if (p.degree() == 0) return out;

  // Roots at the origin come from the low-order zeros.
  const int zeros_at_origin = p.low_order();
  for (int k = 0; k < zeros_at_origin; ++k) out.roots.emplace_back(0.0, 0.0);
  const Poly q = shift_down(p, zeros_at_origin);
  const int m = q.degree();

  if (m > 0) {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) companion(i, m - 1) = -q[static_cast<std::size_t>(i)] / q.leading();
    balance(companion);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::kInvalidArgument, "companion-matrix QR iteration did not converge");
    }
    const Poly dq = derivative(q);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Complex z = solver.eigenvalues()(i);
      // Conjugate pairs come out exactly mirrored; refine the upper member
      // and mirror it so pairing survives the refinement.
      if (z.imag() < 0.0) continue;
      const Complex refined = polish(q, dq, z);
      if (z.imag() == 0.0) {
        out.roots.emplace_back(refined.real(), 0.0);
      } else {
        out.roots.push_back(refined);
        out.roots.push_back(std::conj(refined));
      }
    }
  }

  std::sort(out.roots.begin(), out.roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const double scale = p.max_abs();
  for (Complex z : out.roots) out.residual = std::max(out.residual, std::abs(p(z)) / scale);
  return out;
}

PolesZeros poles_zeros(const TransferFunction& tf) {
  const Poly b = tf.numeric_numerator();
  const Poly a = tf.numeric_denominator();
  if (b.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero transfer function has no zero set");
  return {find_roots(b), find_roots(a)};
}

}  // namespace sfg
