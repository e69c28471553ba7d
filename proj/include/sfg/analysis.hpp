#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "sfg/poly.hpp"
#include "sfg/shannon.hpp"

namespace sfg {

// ---- frequency response -------------------------------------------------

struct FrequencyPoint {
  double omega = 0.0;  // rad/s
  Complex value;
  double magnitude_db = 0.0;
  double phase_deg = 0.0;  // unwrapped across the sweep
};

inline constexpr double kDefaultSweepMin = 1e-2;
inline constexpr double kDefaultSweepMax = 1e2;
inline constexpr std::size_t kDefaultSweepPoints = 400;

// Log-spaced, both ends included.
std::vector<double> log_sweep(double wmin = kDefaultSweepMin, double wmax = kDefaultSweepMax,
                              std::size_t points = kDefaultSweepPoints);

// G(jw) for each omega. The first phase lies in (-180, 180]; later phases
// are shifted by whole turns to stay within 180 degrees of their predecessor.
std::vector<FrequencyPoint> frequency_response(const TransferFunction& tf, std::span<const double> omegas);

// ---- Routh ---------------------------------------------------------------

enum class Verdict { kStable, kUnstable, kMarginal };
std::string_view to_string(Verdict v);

struct RouthDegeneracy {
  enum class Kind { kEpsilon, kAuxiliaryRow };
  Kind kind;
  int row;
};

struct RouthReport {
  // rows[i] holds the s^(n-i) row; entries that grow without bound as the
  // epsilon substitute vanishes are reported as +-infinity.
  std::vector<std::vector<double>> rows;
  std::vector<int> first_column_signs;
  int sign_changes = 0;
  Verdict verdict = Verdict::kStable;
  std::vector<RouthDegeneracy> degeneracies;
};

// A zero leading entry in a nonzero row is replaced by epsilon and carried as
// a truncated series in epsilon, so signs are the epsilon -> 0+ limits. An
// all-zero row is replaced by the derivative of the auxiliary polynomial.
RouthReport routh_stability(const Poly& a);

// ---- roots -----------------------------------------------------------------

struct RootSet {
  std::vector<Complex> roots;  // sorted by real part, then imaginary part
  double residual = 0.0;       // max |p(root)| / max |coefficient|
};

// Eigenvalues of the balanced companion matrix (Hessenberg + shifted QR),
// each refined by a few Newton steps. Constant polynomials have no roots.
RootSet find_roots(const Poly& p);

struct PolesZeros {
  RootSet zeros;
  RootSet poles;
};
PolesZeros poles_zeros(const TransferFunction& tf);

// ---- order reduction -------------------------------------------------------

struct ReducedModel {
  TransferFunction tf;            // denominator normalized to A(0) = 1
  std::vector<double> quotients;  // continued-fraction quotients used
};

// Cauer second-form expansion about s = 0,
//   G = 1 / (h1 + s / (h2 + s / (h3 + ...))),
// truncated after 2r quotients and folded back into a rational function of
// denominator degree r matching the first 2r Taylor coefficients of G.
ReducedModel reduce_order_cf(const TransferFunction& tf, int r);

// First `count` Taylor coefficients of num/den about s = 0.
std::vector<double> taylor_coefficients(const Poly& num, const Poly& den, int count);

}  // namespace sfg
