#include <cstdlib>
#include <string>

#include "sfg/error.hpp"
#include "sfg/simd/kernels.hpp"

namespace sfg::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(SFG_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(SFG_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> usable() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (available(isa)) out.push_back(isa);
  }
  return out;
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("SFG_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == to_string(isa) && available(isa)) return isa;
    }
  }
  if (available(Isa::kAvx2)) return Isa::kAvx2;
  if (available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

void require(Isa isa) {
  static const bool ok[3] = {available(Isa::kScalar), available(Isa::kAvx2),
                             available(Isa::kNeon)};
  if (!ok[static_cast<int>(isa)]) {
    throw Error(ErrorCode::kInvalidArgument,
                "SIMD variant not available on this machine: " + std::string(to_string(isa)));
  }
}

}  // namespace

Isa active() {
  static const Isa chosen = detect();
  return chosen;
}

void convolve_accumulate(Isa isa, std::span<const double> a, std::span<const double> b,
                         std::span<double> out) {
  require(isa);
  switch (isa) {
#if defined(SFG_HAVE_AVX2)
    case Isa::kAvx2: return avx2::convolve_accumulate(a, b, out);
#endif
#if defined(SFG_HAVE_NEON)
    case Isa::kNeon: return neon::convolve_accumulate(a, b, out);
#endif
    default: return scalar::convolve_accumulate(a, b, out);
  }
}

void eval_jw(Isa isa, std::span<const double> coeffs, std::span<const double> omegas,
             std::span<double> re, std::span<double> im) {
  require(isa);
  switch (isa) {
#if defined(SFG_HAVE_AVX2)
    case Isa::kAvx2: return avx2::eval_jw(coeffs, omegas, re, im);
#endif
#if defined(SFG_HAVE_NEON)
    case Isa::kNeon: return neon::eval_jw(coeffs, omegas, re, im);
#endif
    default: return scalar::eval_jw(coeffs, omegas, re, im);
  }
}

void and_into(Isa isa, std::span<const std::uint64_t> mask, std::span<std::uint64_t> acc) {
  require(isa);
  switch (isa) {
#if defined(SFG_HAVE_AVX2)
    case Isa::kAvx2: return avx2::and_into(mask, acc);
#endif
#if defined(SFG_HAVE_NEON)
    case Isa::kNeon: return neon::and_into(mask, acc);
#endif
    default: return scalar::and_into(mask, acc);
  }
}

void convolve_accumulate(std::span<const double> a, std::span<const double> b,
                         std::span<double> out) {
  convolve_accumulate(active(), a, b, out);
}

void eval_jw(std::span<const double> coeffs, std::span<const double> omegas,
             std::span<double> re, std::span<double> im) {
  eval_jw(active(), coeffs, omegas, re, im);
}

void and_into(std::span<const std::uint64_t> mask, std::span<std::uint64_t> acc) {
  and_into(active(), mask, acc);
}

}  // namespace sfg::simd
