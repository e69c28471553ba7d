#include "sfg/simd/kernels.hpp"

#include <immintrin.h>

#include <cstddef>

namespace sfg::simd::avx2 {

void convolve_accumulate(std::span<const double> a, std::span<const double> b,
                         std::span<double> out) {
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    const __m256d va = _mm256_set1_pd(ai);
    double* dst = out.data() + i;
    std::size_t j = 0;
    for (; j + 4 <= nb; j += 4) {
      const __m256d vb = _mm256_loadu_pd(b.data() + j);
      const __m256d vo = _mm256_loadu_pd(dst + j);
      _mm256_storeu_pd(dst + j, _mm256_add_pd(vo, _mm256_mul_pd(va, vb)));
    }
    for (; j < nb; ++j) dst[j] += ai * b[j];
  }
}

void eval_jw(std::span<const double> coeffs, std::span<const double> omegas,
             std::span<double> re, std::span<double> im) {
  const std::size_t n = omegas.size();
  std::size_t p = 0;
  for (; p + 4 <= n; p += 4) {
    const __m256d w = _mm256_loadu_pd(omegas.data() + p);
    __m256d r = _mm256_setzero_pd();
    __m256d i = _mm256_setzero_pd();
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      const __m256d c = _mm256_set1_pd(coeffs[k]);
      const __m256d next_r = _mm256_sub_pd(c, _mm256_mul_pd(i, w));
      const __m256d next_i = _mm256_mul_pd(r, w);
      r = next_r;
      i = next_i;
    }
    _mm256_storeu_pd(re.data() + p, r);
    _mm256_storeu_pd(im.data() + p, i);
  }
  if (p < n) {
    scalar::eval_jw(coeffs, omegas.subspan(p), re.subspan(p), im.subspan(p));
  }
}

void and_into(std::span<const std::uint64_t> mask, std::span<std::uint64_t> acc) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask.data() + i));
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc.data() + i), _mm256_and_si256(a, m));
  }
  for (; i < n; ++i) acc[i] &= mask[i];
}

}  // namespace sfg::simd::avx2
