#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sfg/graph.hpp"
#include "sfg/monomial.hpp"
#include "sfg/poly.hpp"

namespace sfg {

/// One elementary circuit. node_seq starts at the smallest node id;
/// branch_ids[k] runs node_seq[k] -> node_seq[k + 1] (cyclically).
struct LoopRec {
  int index = 0;
  std::vector<int> node_seq;
  std::vector<int> branch_ids;
  std::vector<int> node_set;  // sorted

  friend bool operator==(const LoopRec&, const LoopRec&) = default;
};

struct SymbolicGain {
  Monomial monomial;
  FactoredRational gain;

  RationalFn rational() const { return gain.to_rational(); }
  friend SymbolicGain operator*(const SymbolicGain& a, const SymbolicGain& b) {
    return {a.monomial * b.monomial, a.gain * b.gain};
  }
  friend bool operator==(const SymbolicGain&, const SymbolicGain&) = default;
};

/// Symmetric loop contact relation, stored as one bitset row per loop of the
/// loops it does NOT touch (the form the combination search consumes).
class TouchMatrix {
 public:
  TouchMatrix() = default;
  explicit TouchMatrix(std::size_t n);
  // Builds from an explicit predicate; touches(i, j) must be symmetric.
  static TouchMatrix from_relation(std::size_t n, const std::vector<std::vector<bool>>& touches);

  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }
  bool touches(std::size_t i, std::size_t j) const;
  void set_disjoint(std::size_t i, std::size_t j);
  std::span<const std::uint64_t> disjoint_row(std::size_t i) const {
    return {bits_.data() + i * words_, words_};
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline constexpr std::size_t kDefaultLoopCap = 100000;

// All elementary circuits of a preprocessed graph (closed or not), sorted by
// canonical node sequence. Throws kLoopLimit past `cap` circuits.
std::vector<LoopRec> find_loops(const SfgGraph& g, std::size_t cap = kDefaultLoopCap);
SymbolicGain loop_gain(const LoopRec& loop, const SfgGraph& g);
TouchMatrix touch_matrix(std::span<const LoopRec> loops);

}  // namespace sfg
