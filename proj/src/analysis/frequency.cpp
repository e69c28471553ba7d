#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "sfg/analysis.hpp"
#include "sfg/error.hpp"
#include "sfg/simd/kernels.hpp"

namespace sfg {

std::vector<double> log_sweep(double wmin, double wmax, std::size_t points) {
  if (!(wmin > 0.0) || !(wmax > wmin) || points < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("sweep needs 0 < wmin < wmax and at least 2 points (got {}, {}, {})", wmin,
                            wmax, points));
  }
  std::vector<double> out(points);
  const double lo = std::log10(wmin);
  const double step = (std::log10(wmax) - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = std::pow(10.0, lo + step * static_cast<double>(i));
  out.front() = wmin;
  out.back() = wmax;
  return out;
}

std::vector<FrequencyPoint> frequency_response(const TransferFunction& tf, std::span<const double> omegas) {
  const Poly b = tf.numeric_numerator();
  const Poly a = tf.numeric_denominator();
  const std::size_t n = omegas.size();
  std::vector<double> br(n), bi(n), ar(n), ai(n);
  simd::eval_jw(b.coeffs(), omegas, br, bi);
  simd::eval_jw(a.coeffs(), omegas, ar, ai);

  std::vector<FrequencyPoint> out(n);
  double prev_phase = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex den(ar[k], ai[k]);
    if (std::abs(den) < 1e-300) {
      throw Error(ErrorCode::kEvaluationAtPole, fmt::format("A(jw) vanishes at omega = {}", omegas[k]));
    }
    FrequencyPoint& p = out[k];
    p.omega = omegas[k];
    p.value = Complex(br[k], bi[k]) / den;
    p.magnitude_db = 20.0 * std::log10(std::abs(p.value));
    double phase = std::arg(p.value) * 180.0 / std::numbers::pi;
    if (k == 0) {
      if (phase <= -180.0) phase += 360.0;
    } else {
      while (phase - prev_phase > 180.0) phase -= 360.0;
      while (phase - prev_phase < -180.0) phase += 360.0;
    }
    p.phase_deg = phase;
    prev_phase = phase;
  }
  return out;
}

}  // namespace sfg
