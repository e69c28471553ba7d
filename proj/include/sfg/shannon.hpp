#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>

#include "sfg/combos.hpp"
#include "sfg/graph.hpp"
#include "sfg/monomial.hpp"
#include "sfg/poly.hpp"

namespace sfg {

using SymbolValues = std::map<std::string, Complex>;

/// Multilinear expression: sum over monomials of monomial * rational(s).
struct SymbolicRational {
  std::map<Monomial, RationalFn> terms;

  // The 1/G marker, when present, is read from values under kInvGName.
  Complex operator()(Complex s, const SymbolValues& values = {}) const;
};

/// G = B / A with B and A each grouped by symbol monomial (1/G excluded).
struct TransferFunction {
  std::map<Monomial, Poly> numerator;
  std::map<Monomial, Poly> denominator;
  char variable = 's';

  // Only the plain monomial on both sides.
  bool is_numeric() const;
  // Plain-monomial polynomials; throws kSymbolicInput unless is_numeric().
  Poly numeric_numerator() const;
  Poly numeric_denominator() const;
  Complex operator()(Complex s, const SymbolValues& values = {}) const;

  static TransferFunction from_rational(const RationalFn& r);

  friend bool operator==(const TransferFunction&, const TransferFunction&) = default;
};

// f(1/G) = 1 - sum(order 1) + sum(order 2) - ... accumulated per monomial
// over one common denominator.
SymbolicRational shannon_sum(std::span<const ComboTable> tables, double rel_tol = kDefaultTidyTol);

struct ExtractOptions {
  bool monic = false;
  double rel_tol = kDefaultTidyTol;
};

// Splits f on the 1/G marker: f = A - B * (1/G), G = B / A.
// Throws kNoForwardPath when no 1/G term survives, kDegenerateDenominator
// when A vanishes.
TransferFunction extract_transfer(const SymbolicRational& f, const ExtractOptions& opts = {});

TransferFunction substitute_symbol(const TransferFunction& tf, const std::string& symbol,
                                   const RationalFn& value, double rel_tol = kDefaultTidyTol);

// Prunes tiny coefficients, drops zero monomials and cancels powers of s
// common to every polynomial.
TransferFunction tidy(const TransferFunction& tf, double rel_tol = kDefaultTidyTol);

// Independent check: solves the node equations (I - A) x = e_input at s0 by
// dense LU, where A holds the summed branch gains, and returns x_output.
// Throws kSingularAtSample at poles or near-singular systems.
Complex numeric_oracle(const SfgGraph& g, Complex s0, const SymbolValues& values = {});
// Same system with an arbitrary injection per node.
Complex numeric_oracle_driven(const SfgGraph& g, Complex s0, const std::map<int, Complex>& injections,
                              int output, const SymbolValues& values = {});

// sum_i G_i * F_i; every G_i must have a symbol-free denominator.
SymbolicRational compose_response(std::span<const std::pair<TransferFunction, RationalFn>> parts,
                                  double rel_tol = kDefaultTidyTol);

}  // namespace sfg
