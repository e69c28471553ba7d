#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "sfg/error.hpp"
#include "sfg/graph.hpp"
#include "sfg/loops.hpp"
#include "sfg/shannon.hpp"
#include "support/test_support.hpp"

using namespace sfg;

namespace {

std::string read_data(const char* name) {
  std::ifstream in(std::string(SFG_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kParse;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

SfgGraph two_parallel() {
  SfgGraph g;
  g.nodes = {{1, {}}, {2, {}}};
  g.add_branch(1, 2, RationalFn(3.0));
  g.add_branch(1, 2, RationalFn(Poly{1}, Poly{1, 1}), {"V"});
  g.symbols = {"V"};
  g.input = 1;
  g.output = 2;
  return g;
}

}  // namespace

TEST_CASE("parse a minimal graph") {
  const SfgGraph g = parse_graph(R"({"nodes": [{"id": 1}, {"id": 2}],
                                     "branches": [{"from": 1, "to": 2, "num": [1], "den": [1]}]})");
  CHECK(g.nodes.size() == 2);
  REQUIRE(g.branches.size() == 1);
  CHECK(g.input == 1);
  CHECK(g.output == 2);
  CHECK_FALSE(g.closed);
}

TEST_CASE("parse the cascade file") {
  const SfgGraph g = parse_graph(read_data("cascade.json"));
  CHECK(g.nodes.size() == 5);
  REQUIRE(g.branches.size() == 4);
  CHECK(g.branches[0].gain == RationalFn(Poly{1}, Poly{1, 1}));
  CHECK(g.branches[1].gain == RationalFn(Poly{4, 1}, Poly{2, 1}));
  CHECK(g.branches[2].symbols == std::vector<std::string>{"V"});
  CHECK(g.branches[3].gain == RationalFn(2.0));
  CHECK(g.symbols == std::vector<std::string>{"V"});
  for (int id = 1; id < 5; ++id) CHECK(g.out_degree(id) == 1);
}

TEST_CASE("parse errors name the offending item") {
  const auto unknown = R"({"nodes": [{"id": 1}, {"id": 2}], "branches": [{"from": 1, "to": 9, "num": [1]}]})";
  CHECK(code_of([&] { parse_graph(unknown); }) == ErrorCode::kUnknownNode);
  CHECK_THAT(message_of([&] { parse_graph(unknown); }), Catch::Matchers::ContainsSubstring("unknown node 9"));

  CHECK(code_of([] { parse_graph(R"({"nodes": [{"id": 1}, {"id": 1}], "branches": []})"); }) ==
        ErrorCode::kDuplicateNode);
  CHECK(code_of([] { parse_graph("{not json"); }) == ErrorCode::kParse);
  CHECK(code_of([] {
          parse_graph(R"({"nodes": [{"id": 1}, {"id": 2}],
                          "branches": [{"from": 1, "to": 2, "num": [1], "symbols": ["1/G"]}]})");
        }) == ErrorCode::kParse);
  CHECK(code_of([] {
          parse_graph(R"({"nodes": [{"id": 1}, {"id": 2}], "symbols": ["W"],
                          "branches": [{"from": 1, "to": 2, "num": [1], "symbols": ["V"]}]})");
        }) == ErrorCode::kParse);
  CHECK(code_of([] {
          parse_graph(R"({"nodes": [{"id": 1}, {"id": 2}],
                          "branches": [{"from": 1, "to": 2, "num": [1], "symbols": ["V", "V"]}]})");
        }) == ErrorCode::kParse);
  CHECK(code_of([] {
          parse_graph(R"({"nodes": [{"id": 1}, {"id": 2}],
                          "branches": [{"from": 1, "to": 2, "num": [1], "den": [0]}]})");
        }) == ErrorCode::kParse);
  // Two sources, nothing designated.
  CHECK(code_of([] {
          parse_graph(R"({"nodes": [{"id": 1}, {"id": 2}, {"id": 3}],
                          "branches": [{"from": 1, "to": 3, "num": [1]}, {"from": 2, "to": 3, "num": [1]}]})");
        }) == ErrorCode::kAmbiguousTerminal);
}

TEST_CASE("explicit terminals win over detection") {
  const SfgGraph g = parse_graph(R"({"nodes": [{"id": 1}, {"id": 2}, {"id": 3}], "input": 2, "output": 3,
                                     "branches": [{"from": 1, "to": 3, "num": [1]}, {"from": 2, "to": 3, "num": [1]}]})");
  CHECK(g.input == 2);
  CHECK(g.output == 3);
}

TEST_CASE("serialize then parse is the identity") {
  testing::Rng rng(31);
  testing::GraphShape shape;
  shape.symbol = true;
  for (int i = 0; i < 50; ++i) {
    SfgGraph g = testing::random_graph(rng, shape);
    g.nodes[0].label = "in";
    const std::string text = serialize_graph(g);
    CHECK(parse_graph(text) == g);
    CHECK(serialize_graph(parse_graph(text)) == text);
  }
}

TEST_CASE("insert_parallel_nodes splits later parallels") {
  const SfgGraph g = two_parallel();
  const SfgGraph p = insert_parallel_nodes(g);
  REQUIRE(p.branches.size() == 3);
  CHECK(p.nodes.size() == 3);
  CHECK(p.branches[0].from == 1);
  CHECK(p.branches[0].to == 2);
  CHECK(p.branches[0].gain == RationalFn(3.0));
  CHECK(p.branches[1].from == 1);
  CHECK(p.branches[1].to == 3);
  CHECK(p.branches[1].gain == RationalFn(Poly{1}, Poly{1, 1}));
  CHECK(p.branches[1].symbols == std::vector<std::string>{"V"});
  CHECK(p.branches[2].from == 3);
  CHECK(p.branches[2].to == 2);
  CHECK(p.branches[2].gain == RationalFn(1.0));
  CHECK(p.branches[2].symbols.empty());
  CHECK_FALSE(p.has_parallel_branches());
  // Already free of parallels: unchanged.
  CHECK(insert_parallel_nodes(p) == p);
}

TEST_CASE("parallel split keeps the transfer at a fixed point") {
  SfgGraph g;
  g.nodes = {{1, {}}, {2, {}}, {3, {}}, {4, {}}};
  g.add_branch(1, 2, RationalFn(Poly{1}, Poly{1, 1}));
  g.add_branch(2, 3, RationalFn(0.5));
  g.add_branch(2, 3, RationalFn(Poly{1, 1}, Poly{3, 1}));
  g.add_branch(3, 2, RationalFn(-0.25));
  g.add_branch(3, 4, RationalFn(2.0));
  g.input = 1;
  g.output = 4;
  const Complex before = numeric_oracle(g, 2.0);
  const Complex after = numeric_oracle(insert_parallel_nodes(g), 2.0);
  CHECK(testing::rel_err(after, before) <= 1e-10);
}

TEST_CASE("augment_terminals") {
  SECTION("feedback into the input gets a fresh source") {
    SfgGraph g;
    g.nodes = {{2, {}}, {3, {}}, {5, {}}};
    g.add_branch(2, 3, RationalFn(1.0));
    g.add_branch(3, 5, RationalFn(1.0));
    g.add_branch(5, 2, RationalFn(0.5));
    g.input = 2;
    g.output = 3;
    const SfgGraph a = augment_terminals(g);
    CHECK(a.input == 6);
    CHECK(a.in_degree(a.input) == 0);
    const Branch& fresh = a.branches[3];
    CHECK(fresh.from == 6);
    CHECK(fresh.to == 2);
    CHECK(fresh.gain == RationalFn(1.0));
    // Output 3 had an outgoing branch too.
    CHECK(a.output == 7);
    CHECK(a.out_degree(a.output) == 0);
  }
  SECTION("proper terminals are left alone") {
    const SfgGraph g = parse_graph(R"({"nodes": [{"id": 1}, {"id": 2}], "branches": [{"from": 1, "to": 2, "num": [1]}]})");
    CHECK(augment_terminals(g) == g);
  }
  SECTION("one node as both terminals") {
    SfgGraph g;
    g.nodes = {{1, {}}};
    g.add_branch(1, 1, RationalFn(0.5));
    g.input = g.output = 1;
    const SfgGraph a = augment_terminals(g);
    CHECK(a.nodes.size() == 3);
    CHECK(a.input != a.output);
    CHECK(a.in_degree(a.input) == 0);
    CHECK(a.out_degree(a.output) == 0);
    check_preprocessed(a);
    // x1 = 1 + 0.5 x1.
    CHECK(testing::rel_err(numeric_oracle(a, 1.0), 2.0) <= 1e-12);
  }
}

TEST_CASE("close_graph") {
  const SfgGraph g = preprocess(parse_graph(read_data("cascade.json")));
  const SfgGraph c = close_graph(g);
  CHECK(c.closed);
  REQUIRE(c.branches.size() == 5);
  const Branch& back = c.branches.back();
  CHECK(back.inv_g);
  CHECK(back.from == c.output);
  CHECK(back.to == c.input);
  CHECK(back.gain == RationalFn(1.0));
  CHECK(code_of([&] { close_graph(c); }) == ErrorCode::kAlreadyClosed);
  CHECK_THAT(message_of([&] { close_graph(c); }), Catch::Matchers::ContainsSubstring("already closed"));
  // Must be preprocessed first.
  CHECK(code_of([] { close_graph(two_parallel()); }) == ErrorCode::kPrecondition);
}

TEST_CASE("every cycle through the closing branch contains both terminals") {
  SfgGraph g;
  g.nodes = {{1, {}}, {2, {}}, {3, {}}, {4, {}}};
  g.add_branch(1, 2, RationalFn(1.0));
  g.add_branch(2, 3, RationalFn(1.0));
  g.add_branch(3, 2, RationalFn(0.5));
  g.add_branch(2, 4, RationalFn(1.0));
  g.add_branch(3, 4, RationalFn(1.0));
  g.input = 1;
  g.output = 4;
  const SfgGraph c = close_graph(preprocess(g));
  int through = 0;
  for (const auto& cycle : testing::brute_circuits(c)) {
    const bool has_in = std::find(cycle.begin(), cycle.end(), c.input) != cycle.end();
    const bool has_out = std::find(cycle.begin(), cycle.end(), c.output) != cycle.end();
    CHECK(has_in == has_out);
    through += has_in;
  }
  CHECK(through == 2);
}

TEST_CASE("preprocessing establishes the graph invariants") {
  testing::Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    SfgGraph g = testing::random_graph(rng);
    g.add_branch(g.output, g.input, RationalFn(0.5));
    const SfgGraph p = preprocess(g);
    check_preprocessed(p);
    CHECK_FALSE(p.has_parallel_branches());
    CHECK(p.in_degree(p.input) == 0);
    CHECK(p.out_degree(p.output) == 0);
    for (const auto& n : g.nodes) CHECK(p.has_node(n.id));
    const SfgGraph c = close_graph(p);
    check_preprocessed(c);
    CHECK(std::count_if(c.branches.begin(), c.branches.end(), [](const Branch& b) { return b.inv_g; }) == 1);
  }
}

TEST_CASE("symbol names") {
  CHECK(is_valid_symbol_name("V"));
  CHECK(is_valid_symbol_name("k_2"));
  CHECK_FALSE(is_valid_symbol_name("1/G"));
  CHECK_FALSE(is_valid_symbol_name("2x"));
  CHECK_FALSE(is_valid_symbol_name(""));
}
