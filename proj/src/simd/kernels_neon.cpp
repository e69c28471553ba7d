#include "sfg/simd/kernels.hpp"

#include <arm_neon.h>

#include <cstddef>

namespace sfg::simd::neon {

void convolve_accumulate(std::span<const double> a, std::span<const double> b,
                         std::span<double> out) {
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    const float64x2_t va = vdupq_n_f64(ai);
    double* dst = out.data() + i;
    std::size_t j = 0;
    for (; j + 2 <= nb; j += 2) {
      const float64x2_t vb = vld1q_f64(b.data() + j);
      const float64x2_t vo = vld1q_f64(dst + j);
      // vmul + vadd, not vfma: keeps rounding identical to the scalar kernel.
      vst1q_f64(dst + j, vaddq_f64(vo, vmulq_f64(va, vb)));
    }
    for (; j < nb; ++j) dst[j] += ai * b[j];
  }
}

void eval_jw(std::span<const double> coeffs, std::span<const double> omegas,
             std::span<double> re, std::span<double> im) {
  const std::size_t n = omegas.size();
  std::size_t p = 0;
  for (; p + 2 <= n; p += 2) {
    const float64x2_t w = vld1q_f64(omegas.data() + p);
    float64x2_t r = vdupq_n_f64(0.0);
    float64x2_t i = vdupq_n_f64(0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      const float64x2_t c = vdupq_n_f64(coeffs[k]);
      const float64x2_t next_r = vsubq_f64(c, vmulq_f64(i, w));
      const float64x2_t next_i = vmulq_f64(r, w);
      r = next_r;
      i = next_i;
    }
    vst1q_f64(re.data() + p, r);
    vst1q_f64(im.data() + p, i);
  }
  if (p < n) {
    scalar::eval_jw(coeffs, omegas.subspan(p), re.subspan(p), im.subspan(p));
  }
}

void and_into(std::span<const std::uint64_t> mask, std::span<std::uint64_t> acc) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_u64(acc.data() + i, vandq_u64(vld1q_u64(acc.data() + i), vld1q_u64(mask.data() + i)));
  }
  for (; i < n; ++i) acc[i] &= mask[i];
}

}  // namespace sfg::simd::neon
