#include "sfg/poly.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <regex>

#include "sfg/error.hpp"
#include "sfg/simd/kernels.hpp"

namespace sfg {

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidArgument, "polynomial coefficient is not finite");
    }
  }
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  // -0.0 and 0.0 compare equal but print differently; keep one zero.
  for (double& c : coeffs_) {
    if (c == 0.0) c = 0.0;
  }
  if (degree() > kMaxDegree) {
    throw Error(ErrorCode::kDegreeOverflow,
                fmt::format("polynomial degree {} exceeds the cap of {}", degree(), kMaxDegree));
  }
}

Poly Poly::monomial(double c, int k) {
  std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
  v.back() = c;
  return Poly(std::move(v));
}

int Poly::low_order() const noexcept {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != 0.0) return static_cast<int>(k);
  }
  return 0;
}

double Poly::max_abs() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Poly::operator()(Complex s) const noexcept {
  Complex acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * s + coeffs_[k];
  return acc;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (double& c : out.coeffs_) c = -c;
  for (double& c : out.coeffs_) {
    if (c == 0.0) c = 0.0;
  }
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  std::vector<double> v(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = (*this)[k] + rhs[k];
  return *this = Poly(std::move(v));
}

Poly& Poly::operator-=(const Poly& rhs) { return *this += -rhs; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  simd::convolve_accumulate(a.coeffs_, b.coeffs_, out);
  return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(double c) {
  std::vector<double> v = coeffs_;
  for (double& x : v) x *= c;
  return *this = Poly(std::move(v));
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) {
    if (a.coeffs_[k] < b.coeffs_[k]) return std::strong_ordering::less;
    if (a.coeffs_[k] > b.coeffs_[k]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Poly poly_arith(PolyOp op, const Poly& a, const Poly& b) {
  switch (op) {
    case PolyOp::kAdd: return a + b;
    case PolyOp::kSub: return a - b;
    case PolyOp::kMul: return a * b;
  }
  return Poly();
}

Complex poly_eval(const Poly& p, Complex s0) { return p(s0); }

Poly shift_down(const Poly& p, int k) {
  if (k <= 0 || p.is_zero()) return p;
  const auto& c = p.coeffs();
  if (k > p.low_order()) {
    throw Error(ErrorCode::kInvalidArgument, "shift_down would discard nonzero coefficients");
  }
  return Poly(std::vector<double>(c.begin() + k, c.end()));
}

Poly shift_up(const Poly& p, int k) {
  if (k <= 0 || p.is_zero()) return p;
  std::vector<double> v(static_cast<std::size_t>(k), 0.0);
  v.insert(v.end(), p.coeffs().begin(), p.coeffs().end());
  return Poly(std::move(v));
}

Poly prune(const Poly& p, double rel_tol) {
  const double cut = rel_tol * p.max_abs();
  std::vector<double> v = p.coeffs();
  for (double& c : v) {
    if (std::abs(c) <= cut) c = 0.0;
  }
  return Poly(std::move(v));
}

Poly derivative(const Poly& p) {
  if (p.degree() == 0) return Poly();
  std::vector<double> v(p.coeffs().size() - 1);
  for (std::size_t k = 1; k < p.coeffs().size(); ++k) {
    v[k - 1] = static_cast<double>(k) * p.coeffs()[k];
  }
  return Poly(std::move(v));
}

Poly pow(const Poly& p, int e) {
  Poly out{1.0};
  for (int i = 0; i < e; ++i) out *= p;
  return out;
}

RationalFn::RationalFn(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) {
    throw Error(ErrorCode::kInvalidArgument, "rational function with zero denominator");
  }
}

RationalFn rat_arith(RatOp op, const RationalFn& a, const RationalFn& b) {
  switch (op) {
    case RatOp::kMul:
      return RationalFn(a.num * b.num, a.den * b.den);
    case RatOp::kAdd:
      return RationalFn(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  return {};
}

RationalFn operator-(const RationalFn& a) { return RationalFn(-a.num, a.den); }

RationalFn tidy(const RationalFn& r, double rel_tol) {
  Poly num = prune(r.num, rel_tol);
  Poly den = prune(r.den, rel_tol);
  if (num.is_zero()) return RationalFn(Poly(), Poly{1.0});
  const int k = std::min(num.low_order(), den.low_order());
  num = shift_down(num, k);
  den = shift_down(den, k);
  if (den[static_cast<std::size_t>(den.low_order())] < 0.0) {
    num = -num;
    den = -den;
  }
  return RationalFn(std::move(num), std::move(den));
}

FactoredRational FactoredRational::from(const RationalFn& r) {
  FactoredRational f;
  f.num = r.num;
  if (r.den.is_constant()) {
    f.den_scale = r.den[0];
  } else {
    f.den_factors.push_back(r.den);
  }
  return f;
}

RationalFn FactoredRational::to_rational() const {
  Poly den = Poly::constant(den_scale);
  for (const Poly& f : den_factors) den *= f;
  return RationalFn(num, std::move(den));
}

Complex FactoredRational::operator()(Complex s) const {
  Complex den = den_scale;
  for (const Poly& f : den_factors) den *= f(s);
  return num(s) / den;
}

FactoredRational operator*(const FactoredRational& a, const FactoredRational& b) {
  FactoredRational out;
  out.num = a.num * b.num;
  out.den_scale = a.den_scale * b.den_scale;
  out.den_factors.reserve(a.den_factors.size() + b.den_factors.size());
  std::merge(a.den_factors.begin(), a.den_factors.end(), b.den_factors.begin(),
             b.den_factors.end(), std::back_inserter(out.den_factors));
  return out;
}

ClearedSum clear_denominators(std::span<const FactoredRational> terms) {
  // Least common multiple: the largest multiplicity of each distinct factor.
  std::map<Poly, int> lcm;
  std::vector<std::map<Poly, int>> counts(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (const Poly& f : terms[t].den_factors) ++counts[t][f];
    for (const auto& [f, m] : counts[t]) lcm[f] = std::max(lcm[f], m);
  }

  ClearedSum out;
  out.denominator = Poly{1.0};
  for (const auto& [f, m] : lcm) out.denominator *= pow(f, m);

  out.numerators.reserve(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    Poly n = terms[t].num * (1.0 / terms[t].den_scale);
    for (const auto& [f, m] : lcm) {
      auto it = counts[t].find(f);
      const int have = it == counts[t].end() ? 0 : it->second;
      for (int i = have; i < m; ++i) n *= f;
    }
    out.numerators.push_back(std::move(n));
  }
  return out;
}

namespace {

double parse_number(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, fmt::format("invalid number '{}'", s));
  }
  return v;
}

std::string fmt_coeff(double c) { return fmt::format("{:g}", c); }

}  // namespace

Poly parse_poly_list(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::kParse, "empty coefficient list");
  if (text.front() != '[') return Poly::constant(parse_number(text));
  if (text.back() != ']') throw Error(ErrorCode::kParse, "unterminated coefficient list");
  text = text.substr(1, text.size() - 2);
  std::vector<double> v;
  while (true) {
    const auto comma = text.find(',');
    v.push_back(parse_number(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Poly(std::move(v));
}

RationalFn parse_rational_text(std::string_view text) {
  static const std::regex kToken(R"(\s*(num|den)\s*=\s*(\[[^\]]*\]|[^\s\[\]]+)\s*)");
  Poly num{1.0};
  Poly den{1.0};
  bool seen_num = false;
  bool seen_den = false;
  std::string rest(text);
  std::smatch m;
  while (!rest.empty()) {
    if (rest.find_first_not_of(" \t\r\n") == std::string::npos) break;
    if (!std::regex_search(rest, m, kToken, std::regex_constants::match_continuous)) {
      throw Error(ErrorCode::kParse, fmt::format("cannot parse rational '{}'", text));
    }
    bool& seen = m[1] == "num" ? seen_num : seen_den;
    if (seen) throw Error(ErrorCode::kParse, fmt::format("duplicate '{}' in '{}'", m[1].str(), text));
    seen = true;
    (m[1] == "num" ? num : den) = parse_poly_list(m[2].str());
    rest = m.suffix();
  }
  if (!seen_num) throw Error(ErrorCode::kParse, fmt::format("missing num= in '{}'", text));
  if (den.is_zero()) throw Error(ErrorCode::kParse, "zero denominator");
  return RationalFn(std::move(num), std::move(den));
}

std::string to_text(const RationalFn& r) {
  auto list = [](const Poly& p) {
    std::string s = "[";
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
      if (k) s += ',';
      s += fmt::format("{}", p.coeffs()[k]);
    }
    return s + "]";
  };
  return "num=" + list(r.num) + " den=" + list(r.den);
}

std::string to_pretty(const Poly& p, char var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const double c = p[static_cast<std::size_t>(k)];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (k == 0 || mag != 1.0) out += fmt_coeff(mag);
    if (k >= 1) out += var;
    if (k >= 2) out += fmt::format("^{}", k);
  }
  return out;
}

std::string to_pretty(const RationalFn& r, char var) {
  if (r.den == Poly{1.0}) return to_pretty(r.num, var);
  return "(" + to_pretty(r.num, var) + ")/(" + to_pretty(r.den, var) + ")";
}

}  // namespace sfg
