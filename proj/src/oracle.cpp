#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "sfg/error.hpp"
#include "sfg/shannon.hpp"

namespace sfg {

namespace {

constexpr double kMinRcond = 1e-13;

}  // namespace

Complex numeric_oracle_driven(const SfgGraph& g, Complex s0, const std::map<int, Complex>& injections,
                              int output, const SymbolValues& values) {
  if (g.closed) throw Error(ErrorCode::kPrecondition, "the oracle works on the open graph");
  const auto n = static_cast<Eigen::Index>(g.nodes.size());
  auto index_of = [&](int id) -> Eigen::Index {
    auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), id,
                               [](const Node& a, int v) { return a.id < v; });
    if (it == g.nodes.end() || it->id != id) {
      throw Error(ErrorCode::kUnknownNode, fmt::format("unknown node {}", id));
    }
    return it - g.nodes.begin();
  };

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  for (const Branch& b : g.branches) {
    const Complex den = b.gain.den(s0);
    if (std::abs(den) == 0.0) {
      throw Error(ErrorCode::kSingularAtSample, fmt::format("branch {} has a pole at the sample", b.id));
    }
    Complex gain = b.gain.num(s0) / den;
    for (const auto& sym : b.symbols) {
      auto it = values.find(sym);
      if (it == values.end()) {
        throw Error(ErrorCode::kInvalidArgument, fmt::format("no value given for symbol \"{}\"", sym));
      }
      gain *= it->second;
    }
    if (!std::isfinite(gain.real()) || !std::isfinite(gain.imag())) {
      throw Error(ErrorCode::kSingularAtSample, fmt::format("branch {} is not finite at the sample", b.id));
    }
    m(index_of(b.to), index_of(b.from)) -= gain;
  }

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  for (const auto& [node, value] : injections) rhs(index_of(node)) += value;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  if (!(lu.rcond() > kMinRcond)) {
    throw Error(ErrorCode::kSingularAtSample, "node equations are singular at the sample");
  }
  const Eigen::VectorXcd x = lu.solve(rhs);
  return x(index_of(output));
}

Complex numeric_oracle(const SfgGraph& g, Complex s0, const SymbolValues& values) {
  return numeric_oracle_driven(g, s0, {{g.input, Complex(1.0)}}, g.output, values);
}

}  // namespace sfg
