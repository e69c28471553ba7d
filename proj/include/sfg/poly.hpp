#pragma once

#include <compare>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sfg {

using Complex = std::complex<double>;

// Polynomials of degree above this are rejected rather than silently losing
// precision.
inline constexpr int kMaxDegree = 63;
inline constexpr double kDefaultTidyTol = 1e-12;

/// Real polynomial in s, coefficients in ascending powers. Always canonical:
/// finite coefficients, no trailing zeros, the zero polynomial is [0].
class Poly {
 public:
  Poly() : coeffs_{0.0} {}
  explicit Poly(std::vector<double> coeffs);
  Poly(std::initializer_list<double> coeffs) : Poly(std::vector<double>(coeffs)) {}

  static Poly constant(double c) { return Poly(std::vector<double>{c}); }
  // c * s^k
  static Poly monomial(double c, int k);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  bool is_constant() const noexcept { return coeffs_.size() == 1; }
  double leading() const noexcept { return coeffs_.back(); }
  // Zero past the degree.
  double operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
  }
  // Index of the lowest nonzero coefficient (0 for the zero polynomial).
  int low_order() const noexcept;
  double max_abs() const noexcept;

  Complex operator()(Complex s) const noexcept;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(double c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, double c) { return a *= c; }
  friend Poly operator*(double c, Poly a) { return a *= c; }

  friend bool operator==(const Poly&, const Poly&) = default;
  // Total order: by degree, then coefficients from the constant term up.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

 private:
  std::vector<double> coeffs_;
};

enum class PolyOp { kAdd, kSub, kMul };
Poly poly_arith(PolyOp op, const Poly& a, const Poly& b);
Complex poly_eval(const Poly& p, Complex s0);

// Divides by s^k; the k lowest coefficients must be zero.
Poly shift_down(const Poly& p, int k);
Poly shift_up(const Poly& p, int k);
// Zeroes coefficients with |c| <= rel_tol * max|c|.
Poly prune(const Poly& p, double rel_tol);
Poly derivative(const Poly& p);
Poly pow(const Poly& p, int e);

/// Ratio of two polynomials. No gcd cancellation is ever performed.
struct RationalFn {
  Poly num;
  Poly den{1.0};

  RationalFn() = default;
  RationalFn(Poly n, Poly d);
  explicit RationalFn(double c) : num(Poly::constant(c)) {}

  Complex operator()(Complex s) const { return num(s) / den(s); }
  bool is_zero() const noexcept { return num.is_zero(); }

  friend bool operator==(const RationalFn&, const RationalFn&) = default;
};

enum class RatOp { kAdd, kMul };
RationalFn rat_arith(RatOp op, const RationalFn& a, const RationalFn& b);
inline RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return rat_arith(RatOp::kMul, a, b);
}
inline RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  return rat_arith(RatOp::kAdd, a, b);
}
RationalFn operator-(const RationalFn& a);

// Numerical hygiene: prune tiny coefficients, cancel common powers of s,
// make the lowest nonzero denominator coefficient positive; 0 becomes 0/1.
RationalFn tidy(const RationalFn& r, double rel_tol = kDefaultTidyTol);

/// A rational function whose denominator is kept as a product of factors,
/// so sums of many products can be brought over their least common multiple
/// without multiplying together every denominator.
struct FactoredRational {
  Poly num{1.0};
  double den_scale = 1.0;
  std::vector<Poly> den_factors;  // sorted, non-constant

  static FactoredRational from(const RationalFn& r);
  RationalFn to_rational() const;
  Complex operator()(Complex s) const;

  friend FactoredRational operator*(const FactoredRational& a, const FactoredRational& b);
  friend bool operator==(const FactoredRational&, const FactoredRational&) = default;
};

struct ClearedSum {
  std::vector<Poly> numerators;  // one per input term
  Poly denominator;
};

// Brings every term over the least common multiple of their factored
// denominators. Equal factors are recognized by exact coefficient equality.
ClearedSum clear_denominators(std::span<const FactoredRational> terms);

// Text syntax: "num=[8,2] den=[2,3,1]" is (2s+8)/(s^2+3s+2). den defaults to [1].
RationalFn parse_rational_text(std::string_view text);
// "[1,2]" or a bare number.
Poly parse_poly_list(std::string_view text);
std::string to_text(const RationalFn& r);
// Human form such as "2s + 8" or "s^2 + 3s + 2".
std::string to_pretty(const Poly& p, char var = 's');
std::string to_pretty(const RationalFn& r, char var = 's');

}  // namespace sfg
