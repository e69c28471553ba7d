#include "sfg/monomial.hpp"

#include <fmt/format.h>

namespace sfg {

Monomial::Monomial(const std::vector<std::string>& symbols, int inv_g_power) : inv_g(inv_g_power) {
  for (const auto& s : symbols) ++powers[s];
}

int Monomial::power(const std::string& symbol) const {
  auto it = powers.find(symbol);
  return it == powers.end() ? 0 : it->second;
}

Monomial Monomial::without_inv_g() const {
  Monomial m = *this;
  m.inv_g = 0;
  return m;
}

Monomial Monomial::without(const std::string& symbol) const {
  Monomial m = *this;
  m.powers.erase(symbol);
  return m;
}

std::vector<std::string> Monomial::symbol_list() const {
  std::vector<std::string> out;
  for (const auto& [s, e] : powers) {
    for (int i = 0; i < e; ++i) out.push_back(s);
  }
  return out;
}

std::string Monomial::label() const {
  std::string out;
  for (const auto& [s, e] : powers) {
    if (!out.empty()) out += '*';
    out += s;
    if (e > 1) out += fmt::format("^{}", e);
  }
  if (inv_g > 0) {
    if (!out.empty()) out += '*';
    out += kInvGName;
    if (inv_g > 1) out += fmt::format("^{}", inv_g);
  }
  return out.empty() ? "1" : out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (const auto& [s, e] : b.powers) out.powers[s] += e;
  out.inv_g += b.inv_g;
  return out;
}

}  // namespace sfg
