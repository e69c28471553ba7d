#pragma once

#include <span>
#include <vector>

#include "sfg/loops.hpp"

namespace sfg {

struct ComboRow {
  std::vector<int> loops;  // strictly ascending loop indices
  SymbolicGain gain;       // product of the member loop gains
};

/// All order-k sets of pairwise non-touching loops, rows sorted
/// lexicographically.
struct ComboTable {
  int order = 0;
  std::vector<ComboRow> rows;

  bool empty() const noexcept { return rows.empty(); }
};

ComboTable combos_order1(std::span<const SymbolicGain> gains);
ComboTable combos_order2(const TouchMatrix& touch, std::span<const SymbolicGain> gains);
// Order i -> i + 1: each row is extended by every loop with a larger index
// that touches none of its members; the new gain is the row gain times the
// new loop gain.
ComboTable combos_extend(const ComboTable& table, const TouchMatrix& touch,
                         std::span<const SymbolicGain> gains);

// Orders 1..K where K is the last nonempty order. Empty when there are no loops.
std::vector<ComboTable> all_combos(const TouchMatrix& touch, std::span<const SymbolicGain> gains);

}  // namespace sfg
