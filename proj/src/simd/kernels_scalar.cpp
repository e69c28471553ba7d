#include "sfg/simd/kernels.hpp"

#include <cstddef>

namespace sfg::simd::scalar {

void convolve_accumulate(std::span<const double> a, std::span<const double> b,
                         std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += ai * b[j];
    }
  }
}

void eval_jw(std::span<const double> coeffs, std::span<const double> omegas,
             std::span<double> re, std::span<double> im) {
  for (std::size_t n = 0; n < omegas.size(); ++n) {
    const double w = omegas[n];
    double r = 0.0;
    double i = 0.0;
    // (r + j i) * (j w) + c = (c - i w) + j (r w)
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      const double next_r = coeffs[k] - i * w;
      const double next_i = r * w;
      r = next_r;
      i = next_i;
    }
    re[n] = r;
    im[n] = i;
  }
}

void and_into(std::span<const std::uint64_t> mask, std::span<std::uint64_t> acc) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] &= mask[i];
}

}  // namespace sfg::simd::scalar
