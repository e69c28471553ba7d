#include "sfg/combos.hpp"

#include <bit>

#include "sfg/error.hpp"
#include "sfg/simd/kernels.hpp"

namespace sfg {

ComboTable combos_order1(std::span<const SymbolicGain> gains) {
  ComboTable t{1, {}};
  t.rows.reserve(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) {
    t.rows.push_back(ComboRow{{static_cast<int>(i)}, gains[i]});
  }
  return t;
}

ComboTable combos_order2(const TouchMatrix& touch, std::span<const SymbolicGain> gains) {
  if (touch.size() != gains.size()) {
    throw Error(ErrorCode::kInvalidArgument, "touch matrix and gain list sizes differ");
  }
  ComboTable t{2, {}};
  for (std::size_t i = 0; i < gains.size(); ++i) {
    for (std::size_t j = i + 1; j < gains.size(); ++j) {
      if (!touch.touches(i, j)) {
        t.rows.push_back(ComboRow{{static_cast<int>(i), static_cast<int>(j)}, gains[i] * gains[j]});
      }
    }
  }
  return t;
}

ComboTable combos_extend(const ComboTable& table, const TouchMatrix& touch,
                         std::span<const SymbolicGain> gains) {
  if (touch.size() != gains.size()) {
    throw Error(ErrorCode::kInvalidArgument, "touch matrix and gain list sizes differ");
  }
  ComboTable next{table.order + 1, {}};
  const std::size_t words = touch.words();
  std::vector<std::uint64_t> candidates(words);
  for (const ComboRow& row : table.rows) {
    // Loops disjoint from every member: intersect the members' disjoint sets.
    std::fill(candidates.begin(), candidates.end(), ~std::uint64_t{0});
    for (int member : row.loops) simd::and_into(touch.disjoint_row(member), candidates);

    // Keep indices above the row maximum so each set is generated once.
    const std::size_t first = static_cast<std::size_t>(row.loops.back()) + 1;
    for (std::size_t w = first / 64; w < words; ++w) {
      std::uint64_t bits = candidates[w];
      if (w == first / 64) bits &= ~std::uint64_t{0} << (first % 64);
      while (bits) {
        const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        ComboRow grown{row.loops, row.gain * gains[c]};
        grown.loops.push_back(static_cast<int>(c));
        next.rows.push_back(std::move(grown));
      }
    }
  }
  return next;
}

std::vector<ComboTable> all_combos(const TouchMatrix& touch, std::span<const SymbolicGain> gains) {
  std::vector<ComboTable> tables;
  if (gains.empty()) return tables;
  tables.push_back(combos_order1(gains));
  ComboTable t = combos_order2(touch, gains);
  while (!t.empty()) {
    tables.push_back(std::move(t));
    t = combos_extend(tables.back(), touch, gains);
  }
  return tables;
}

}  // namespace sfg
