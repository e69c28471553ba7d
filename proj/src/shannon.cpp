#include "sfg/shannon.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "sfg/error.hpp"

namespace sfg {

namespace {

// Coefficient-wise sum that zeroes coefficients whose magnitude after
// summation is within rel_tol of the largest contribution at that power,
// i.e. terms that cancelled exactly up to round-off.
class CancellingSum {
 public:
  void add(const Poly& p, double sign = 1.0) {
    const auto& c = p.coeffs();
    if (c.size() > acc_.size()) {
      acc_.resize(c.size(), 0.0);
      scale_.resize(c.size(), 0.0);
    }
    for (std::size_t k = 0; k < c.size(); ++k) {
      acc_[k] += sign * c[k];
      scale_[k] = std::max(scale_[k], std::abs(c[k]));
    }
  }

  Poly result(double rel_tol) const {
    std::vector<double> v = acc_;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (std::abs(v[k]) <= rel_tol * scale_[k]) v[k] = 0.0;
    }
    return v.empty() ? Poly() : Poly(std::move(v));
  }

 private:
  std::vector<double> acc_;
  std::vector<double> scale_;
};

Complex monomial_value(const Monomial& m, const SymbolValues& values, bool allow_inv_g) {
  Complex v = 1.0;
  for (const auto& [sym, e] : m.powers) {
    auto it = values.find(sym);
    if (it == values.end()) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("no value given for symbol \"{}\"", sym));
    }
    v *= std::pow(it->second, e);
  }
  if (m.inv_g > 0) {
    auto it = values.find(std::string(kInvGName));
    if (!allow_inv_g || it == values.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no value given for 1/G");
    }
    v *= std::pow(it->second, m.inv_g);
  }
  return v;
}

// den = sign * s^shift * core with core(0) > 0.
struct SplitDen {
  int shift;
  double sign;
  Poly core;
};

SplitDen split_den(const Poly& den) {
  const int k = den.low_order();
  Poly core = shift_down(den, k);
  const double sign = core[0] < 0.0 ? -1.0 : 1.0;
  return {k, sign, core * sign};
}

}  // namespace

Complex SymbolicRational::operator()(Complex s, const SymbolValues& values) const {
  Complex total = 0.0;
  for (const auto& [m, r] : terms) total += monomial_value(m, values, true) * r(s);
  return total;
}

bool TransferFunction::is_numeric() const {
  auto plain_only = [](const std::map<Monomial, Poly>& side) {
    return std::all_of(side.begin(), side.end(), [](const auto& kv) { return kv.first.is_plain(); });
  };
  return plain_only(numerator) && plain_only(denominator);
}

Poly TransferFunction::numeric_numerator() const {
  if (!is_numeric()) throw Error(ErrorCode::kSymbolicInput, "transfer function still contains symbols");
  auto it = numerator.find(Monomial{});
  return it == numerator.end() ? Poly() : it->second;
}

Poly TransferFunction::numeric_denominator() const {
  if (!is_numeric()) throw Error(ErrorCode::kSymbolicInput, "transfer function still contains symbols");
  auto it = denominator.find(Monomial{});
  if (it == denominator.end()) throw Error(ErrorCode::kDegenerateDenominator, "denominator is zero");
  return it->second;
}

Complex TransferFunction::operator()(Complex s, const SymbolValues& values) const {
  Complex b = 0.0;
  Complex a = 0.0;
  for (const auto& [m, p] : numerator) b += monomial_value(m, values, false) * p(s);
  for (const auto& [m, p] : denominator) a += monomial_value(m, values, false) * p(s);
  return b / a;
}

TransferFunction TransferFunction::from_rational(const RationalFn& r) {
  TransferFunction tf;
  if (!r.num.is_zero()) tf.numerator[Monomial{}] = r.num;
  tf.denominator[Monomial{}] = r.den;
  return tf;
}

SymbolicRational shannon_sum(std::span<const ComboTable> tables, double rel_tol) {
  std::vector<FactoredRational> gains{FactoredRational{}};
  std::vector<Monomial> monomials{Monomial{}};
  std::vector<double> signs{1.0};
  for (const ComboTable& t : tables) {
    const double sign = t.order % 2 == 1 ? -1.0 : 1.0;
    for (const ComboRow& row : t.rows) {
      gains.push_back(row.gain.gain);
      monomials.push_back(row.gain.monomial);
      signs.push_back(sign);
    }
  }

  const ClearedSum cleared = clear_denominators(gains);
  std::map<Monomial, CancellingSum> sums;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (monomials[i].inv_g > 1) {
      throw Error(ErrorCode::kPrecondition, "a combination holds two 1/G loops; they must touch");
    }
    sums[monomials[i]].add(cleared.numerators[i], signs[i]);
  }

  SymbolicRational f;
  for (const auto& [m, sum] : sums) {
    Poly num = sum.result(rel_tol);
    if (num.is_zero()) continue;
    f.terms.emplace(m, tidy(RationalFn(std::move(num), cleared.denominator), rel_tol));
  }
  return f;
}

TransferFunction tidy(const TransferFunction& tf, double rel_tol) {
  TransferFunction out;
  out.variable = tf.variable;
  int common = -1;
  auto prune_side = [&](const std::map<Monomial, Poly>& in, std::map<Monomial, Poly>& side) {
    for (const auto& [m, p] : in) {
      Poly q = prune(p, rel_tol);
      if (q.is_zero()) continue;
      common = common < 0 ? q.low_order() : std::min(common, q.low_order());
      side.emplace(m, std::move(q));
    }
  };
  prune_side(tf.numerator, out.numerator);
  prune_side(tf.denominator, out.denominator);
  if (common > 0) {
    for (auto* side : {&out.numerator, &out.denominator}) {
      for (auto& [m, p] : *side) p = shift_down(p, common);
    }
  }
  return out;
}

TransferFunction extract_transfer(const SymbolicRational& f, const ExtractOptions& opts) {
  bool any_b = false;
  bool any_a = false;
  std::vector<SplitDen> splits;
  std::vector<Poly> cores;
  int max_shift = 0;
  for (const auto& [m, r] : f.terms) {
    if (m.inv_g > 1) throw Error(ErrorCode::kPrecondition, "1/G appears with exponent above 1");
    (m.inv_g == 1 ? any_b : any_a) = true;
    splits.push_back(split_den(r.den));
    max_shift = std::max(max_shift, splits.back().shift);
    if (std::find(cores.begin(), cores.end(), splits.back().core) == cores.end()) {
      cores.push_back(splits.back().core);
    }
  }
  if (!any_b) {
    throw Error(ErrorCode::kNoForwardPath, "no forward path: no loop passes through the 1/G branch");
  }
  if (!any_a) throw Error(ErrorCode::kDegenerateDenominator, "denominator A(s) is identically zero");

  // Multiply through by s^max_shift * prod(cores); each term keeps what its
  // own denominator does not already supply.
  std::map<Monomial, CancellingSum> b_sums;
  std::map<Monomial, CancellingSum> a_sums;
  std::size_t i = 0;
  for (const auto& [m, r] : f.terms) {
    const SplitDen& sd = splits[i++];
    Poly mult = Poly::monomial(sd.sign, max_shift - sd.shift);
    for (const Poly& c : cores) {
      if (!(c == sd.core)) mult *= c;
    }
    const Poly contrib = r.num * mult;
    if (m.inv_g == 1) {
      b_sums[m.without_inv_g()].add(contrib, -1.0);
    } else {
      a_sums[m].add(contrib);
    }
  }

  TransferFunction raw;
  for (const auto& [m, s] : b_sums) raw.numerator.emplace(m, s.result(opts.rel_tol));
  for (const auto& [m, s] : a_sums) raw.denominator.emplace(m, s.result(opts.rel_tol));
  TransferFunction tf = tidy(raw, opts.rel_tol);
  if (tf.numerator.empty()) {
    throw Error(ErrorCode::kNoForwardPath, "no forward path: 1/G terms cancel to zero");
  }
  if (tf.denominator.empty()) {
    throw Error(ErrorCode::kDegenerateDenominator, "denominator A(s) is identically zero");
  }

  if (opts.monic) {
    auto it = tf.denominator.find(Monomial{});
    const double lead = (it != tf.denominator.end() ? it->second : tf.denominator.begin()->second).leading();
    for (auto* side : {&tf.numerator, &tf.denominator}) {
      for (auto& [m, p] : *side) p *= 1.0 / lead;
    }
  }
  return tf;
}

TransferFunction substitute_symbol(const TransferFunction& tf, const std::string& symbol,
                                   const RationalFn& value, double rel_tol) {
  if (symbol == kInvGName) throw Error(ErrorCode::kInvalidArgument, "1/G cannot be substituted");
  int top = 0;
  for (const auto* side : {&tf.numerator, &tf.denominator}) {
    for (const auto& [m, p] : *side) top = std::max(top, m.power(symbol));
  }
  if (top == 0) return tf;

  // Clearing denominators: a monomial carrying symbol^e is scaled by
  // num^e * den^(top - e).
  auto substitute_side = [&](const std::map<Monomial, Poly>& side) {
    std::map<Monomial, CancellingSum> sums;
    for (const auto& [m, p] : side) {
      const int e = m.power(symbol);
      sums[m.without(symbol)].add(p * pow(value.num, e) * pow(value.den, top - e));
    }
    std::map<Monomial, Poly> out;
    for (const auto& [m, s] : sums) out.emplace(m, s.result(rel_tol));
    return out;
  };
  TransferFunction raw;
  raw.variable = tf.variable;
  raw.numerator = substitute_side(tf.numerator);
  raw.denominator = substitute_side(tf.denominator);
  TransferFunction out = tidy(raw, rel_tol);
  if (out.denominator.empty()) {
    throw Error(ErrorCode::kDegenerateDenominator, "substitution made the denominator vanish");
  }
  return out;
}

SymbolicRational compose_response(std::span<const std::pair<TransferFunction, RationalFn>> parts,
                                  double rel_tol) {
  std::map<Monomial, RationalFn> acc;
  for (const auto& [tf, input] : parts) {
    if (tf.denominator.size() != 1 || !tf.denominator.begin()->first.is_plain()) {
      throw Error(ErrorCode::kSymbolicInput, "compose_response needs symbol-free denominators");
    }
    const Poly& a = tf.denominator.begin()->second;
    for (const auto& [m, b] : tf.numerator) {
      RationalFn term(b * input.num, a * input.den);
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(m, std::move(term));
      } else {
        it->second = rat_arith(RatOp::kAdd, it->second, term);
      }
    }
  }
  SymbolicRational out;
  for (const auto& [m, r] : acc) {
    RationalFn t = tidy(r, rel_tol);
    if (!t.is_zero()) out.terms.emplace(m, std::move(t));
  }
  return out;
}

}  // namespace sfg
