#include <catch_amalgamated.hpp>

#include <set>

#include "sfg/combos.hpp"
#include "support/test_support.hpp"

using namespace sfg;

namespace {

using Relation = std::vector<std::vector<bool>>;

std::vector<SymbolicGain> numbered_gains(int n) {
  std::vector<SymbolicGain> out;
  for (int k = 0; k < n; ++k) out.push_back({Monomial{}, FactoredRational::from(RationalFn(k + 2.0))});
  return out;
}

std::vector<std::vector<int>> rows_of(const ComboTable& t) {
  std::vector<std::vector<int>> out;
  for (const auto& r : t.rows) out.push_back(r.loops);
  return out;
}

Relation relation_from_sets(const std::vector<std::set<int>>& node_sets) {
  const std::size_t n = node_sets.size();
  Relation t(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (int x : node_sets[i]) t[i][j] = t[i][j] || node_sets[j].contains(x);
    }
  }
  return t;
}

// Order i -> i + 1 restricted to candidates drawn from the distinct leading
// loops of the current table minus the largest of them, each placed in front
// of rows whose leading loop it exceeds (rows in descending order).
std::set<std::vector<int>> leading_set_extension(const std::set<std::vector<int>>& descending_rows,
                                                 const Relation& touches) {
  std::set<int> leading;
  for (const auto& r : descending_rows) leading.insert(r.front());
  std::set<std::vector<int>> out;
  if (leading.empty()) return out;
  leading.erase(std::prev(leading.end()));
  for (int cand : leading) {
    for (const auto& r : descending_rows) {
      if (cand <= r.front()) continue;
      bool ok = true;
      for (int l : r) ok = ok && !touches[cand][l];
      if (!ok) continue;
      auto extended = r;
      extended.insert(extended.begin(), cand);
      out.insert(extended);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("order one lists every loop") {
  const auto t = combos_order1(numbered_gains(3));
  CHECK(t.order == 1);
  CHECK(rows_of(t) == std::vector<std::vector<int>>{{0}, {1}, {2}});
  CHECK(combos_order1({}).empty());
}

TEST_CASE("order two examples") {
  // Loops on {1,2}, {3,4}, {1,3}.
  const Relation rel = relation_from_sets({{1, 2}, {3, 4}, {1, 3}});
  const auto touch = TouchMatrix::from_relation(3, rel);
  CHECK(rows_of(combos_order2(touch, numbered_gains(3))) == std::vector<std::vector<int>>{{0, 1}});
  const Relation all(3, std::vector<bool>(3, true));
  CHECK(combos_order2(TouchMatrix::from_relation(3, all), numbered_gains(3)).empty());
}

TEST_CASE("order two equals a brute-force pair scan") {
  testing::Rng rng(51);
  for (int i = 0; i < 50; ++i) {
    const auto rel = testing::random_touch_relation(rng, 10, 0.5);
    const auto t = combos_order2(TouchMatrix::from_relation(10, rel), numbered_gains(10));
    std::vector<std::vector<int>> want;
    for (int a = 0; a < 10; ++a) {
      for (int b = a + 1; b < 10; ++b) {
        if (!rel[a][b]) want.push_back({a, b});
      }
    }
    CHECK(rows_of(t) == want);
  }
}

TEST_CASE("extension examples") {
  const Relation none = {{true, false, false}, {false, true, false}, {false, false, true}};
  const auto touch = TouchMatrix::from_relation(3, none);
  const auto gains = numbered_gains(3);
  const auto order2 = combos_order2(touch, gains);
  CHECK(order2.rows.size() == 3);
  const auto order3 = combos_extend(order2, touch, gains);
  CHECK(order3.order == 3);
  REQUIRE(rows_of(order3) == std::vector<std::vector<int>>{{0, 1, 2}});
  CHECK(order3.rows[0].gain.rational().num == Poly{2.0 * 3.0 * 4.0});
  CHECK(combos_extend(combos_extend(order3, touch, gains), touch, gains).empty());
  CHECK(combos_extend(ComboTable{4, {}}, touch, gains).empty());
}

TEST_CASE("all orders equal brute-force subset filtering") {
  testing::Rng rng(52);
  for (int i = 0; i < 100; ++i) {
    const int n = static_cast<int>(rng() % 16);
    const double p = 0.15 + 0.8 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto rel = testing::random_touch_relation(rng, n, p);
    const auto gains = numbered_gains(n);
    const auto tables = all_combos(TouchMatrix::from_relation(static_cast<std::size_t>(n), rel), gains);
    const auto want = testing::brute_combos(rel);
    REQUIRE(tables.size() == want.size());
    for (std::size_t k = 0; k < want.size(); ++k) {
      CHECK(tables[k].order == static_cast<int>(k) + 1);
      CHECK(rows_of(tables[k]) == want[k]);
      for (const auto& row : tables[k].rows) {
        // Incremental gain equals the from-scratch product.
        FactoredRational product = gains[static_cast<std::size_t>(row.loops.front())].gain;
        for (std::size_t m = 1; m < row.loops.size(); ++m) product = product * gains[static_cast<std::size_t>(row.loops[m])].gain;
        CHECK(row.gain.gain == product);
      }
    }
  }
}

TEST_CASE("a twelve-loop relation matches brute force at orders three to six") {
  testing::Rng rng(53);
  const auto rel = testing::random_touch_relation(rng, 12, 0.25);
  const auto tables = all_combos(TouchMatrix::from_relation(12, rel), numbered_gains(12));
  const auto want = testing::brute_combos(rel);
  REQUIRE(want.size() >= 6);
  for (std::size_t k = 2; k < 6; ++k) CHECK(rows_of(tables[k]) == want[k]);
}

TEST_CASE("candidates drawn only from leading loops miss combinations") {
  // Three mutually non-touching loops, 1-based as in the descending layout.
  Relation rel(4, std::vector<bool>(4, false));
  for (int i = 0; i < 4; ++i) rel[i][i] = true;
  const std::set<std::vector<int>> order2 = {{2, 1}, {3, 1}, {3, 2}};
  // Leading loops {2, 3}; dropping the largest leaves {2}, and 2 exceeds no
  // leading entry, so {3, 2, 1} is never produced.
  CHECK(leading_set_extension(order2, rel).empty());

  // The unrestricted extension finds it.
  const Relation zero_based = {{true, false, false}, {false, true, false}, {false, false, true}};
  const auto touch = TouchMatrix::from_relation(3, zero_based);
  const auto gains = numbered_gains(3);
  CHECK(combos_extend(combos_order2(touch, gains), touch, gains).rows.size() == 1);
}

TEST_CASE("no combination holds two closing-branch loops") {
  testing::Rng rng(54);
  for (int i = 0; i < 50; ++i) {
    const SfgGraph c = close_graph(preprocess(testing::random_graph(rng)));
    const auto loops = find_loops(c);
    std::vector<SymbolicGain> gains;
    for (const auto& l : loops) gains.push_back(loop_gain(l, c));
    const auto tables = all_combos(touch_matrix(loops), gains);
    for (std::size_t k = 0; k + 1 < tables.size(); ++k) CHECK_FALSE(tables[k].empty());
    for (const auto& t : tables) {
      for (const auto& row : t.rows) CHECK(row.gain.monomial.inv_g <= 1);
    }
  }
}
