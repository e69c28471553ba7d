#pragma once

// Data-parallel inner loops used by the polynomial substrate, the frequency
// sweep and the loop-combination search. Every kernel has a scalar reference
// implementation; vector variants perform the same floating-point operations
// in the same order per output element, so results are bit-identical.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sfg::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view to_string(Isa isa);

// True when the variant was compiled in and the running CPU supports it.
bool available(Isa isa);

// The variant the dispatching entry points use. Chosen once on first use:
// the best available ISA, unless SFG_SIMD=scalar|avx2|neon overrides it.
Isa active();

// Every ISA usable on this machine, scalar first.
std::vector<Isa> usable();

// out[i + j] += a[i] * b[j]; out.size() must be >= a.size() + b.size() - 1.
// out is accumulated into, not cleared.
void convolve_accumulate(std::span<const double> a, std::span<const double> b,
                         std::span<double> out);

// Evaluates the real polynomial sum_k coeffs[k] * (j*omega)^k at every omega.
void eval_jw(std::span<const double> coeffs, std::span<const double> omegas,
             std::span<double> re, std::span<double> im);

// acc[i] &= mask[i].
void and_into(std::span<const std::uint64_t> mask, std::span<std::uint64_t> acc);

// Per-ISA entry points; callers normally use the dispatching versions above.
namespace scalar {
void convolve_accumulate(std::span<const double> a, std::span<const double> b,
                         std::span<double> out);
void eval_jw(std::span<const double> coeffs, std::span<const double> omegas,
             std::span<double> re, std::span<double> im);
void and_into(std::span<const std::uint64_t> mask, std::span<std::uint64_t> acc);
}  // namespace scalar

namespace avx2 {
void convolve_accumulate(std::span<const double> a, std::span<const double> b,
                         std::span<double> out);
void eval_jw(std::span<const double> coeffs, std::span<const double> omegas,
             std::span<double> re, std::span<double> im);
void and_into(std::span<const std::uint64_t> mask, std::span<std::uint64_t> acc);
}  // namespace avx2

namespace neon {
void convolve_accumulate(std::span<const double> a, std::span<const double> b,
                         std::span<double> out);
void eval_jw(std::span<const double> coeffs, std::span<const double> omegas,
             std::span<double> re, std::span<double> im);
void and_into(std::span<const std::uint64_t> mask, std::span<std::uint64_t> acc);
}  // namespace neon

// Runs a kernel through an explicit ISA (used by equivalence tests).
void convolve_accumulate(Isa isa, std::span<const double> a, std::span<const double> b,
                         std::span<double> out);
void eval_jw(Isa isa, std::span<const double> coeffs, std::span<const double> omegas,
             std::span<double> re, std::span<double> im);
void and_into(Isa isa, std::span<const std::uint64_t> mask, std::span<std::uint64_t> acc);

}  // namespace sfg::simd
