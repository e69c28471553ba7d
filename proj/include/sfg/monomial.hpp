#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sfg {

// Reserved name of the closing-branch marker 1/G.
inline constexpr std::string_view kInvGName = "1/G";

/// Product of symbolic branch factors, e.g. V * W * (1/G). The 1/G marker is
/// tracked apart from user symbols because the transfer function is linear in
/// it and it decides which side of G = B/A a term lands on.
struct Monomial {
  std::map<std::string, int> powers;  // user symbol -> exponent (> 0)
  int inv_g = 0;

  Monomial() = default;
  explicit Monomial(const std::vector<std::string>& symbols, int inv_g_power = 0);

  bool is_plain() const noexcept { return powers.empty() && inv_g == 0; }
  int power(const std::string& symbol) const;
  Monomial without_inv_g() const;
  Monomial without(const std::string& symbol) const;
  std::vector<std::string> symbol_list() const;  // sorted, repeated per exponent
  // "1" for the plain monomial, otherwise e.g. "V*W^2*1/G".
  std::string label() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.powers <=> b.powers; c != 0) return c;
    return a.inv_g <=> b.inv_g;
  }
};

}  // namespace sfg
