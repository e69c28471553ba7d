#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sfg/monomial.hpp"
#include "sfg/poly.hpp"

namespace sfg {

struct Node {
  int id = 0;
  std::string label;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Directed branch: the target signal receives gain(s) * symbols * source.
struct Branch {
  int id = 0;
  int from = 0;
  int to = 0;
  RationalFn gain;
  std::vector<std::string> symbols;  // sorted, each at most once
  bool inv_g = false;                // the closing 1/G branch

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// Signal flow graph. Values are never mutated by the transforms below; each
/// returns a new graph.
struct SfgGraph {
  std::vector<Node> nodes;  // sorted by id
  std::vector<Branch> branches;
  std::vector<std::string> symbols;  // declared user symbols, sorted
  int input = 0;
  int output = 0;
  bool closed = false;

  bool has_node(int id) const;
  int max_node_id() const;
  int next_branch_id() const;
  // Appends a node with id max_node_id() + 1 and returns the id.
  int add_fresh_node(std::string label = {});
  void add_branch(int from, int to, RationalFn gain, std::vector<std::string> symbols = {});

  int in_degree(int node) const;
  int out_degree(int node) const;
  bool has_parallel_branches() const;

  friend bool operator==(const SfgGraph&, const SfgGraph&) = default;
};

// Reads the JSON graph file format. The result is unclosed and unprocessed.
SfgGraph parse_graph(std::string_view text);
// Canonical JSON form; parse_graph(serialize_graph(g)) == g for unclosed g.
std::string serialize_graph(const SfgGraph& g);

// Splits every parallel branch after the first of an ordered node pair into
// (from -> fresh, gain, symbols) and (fresh -> to, 1).
SfgGraph insert_parallel_nodes(const SfgGraph& g);
// Gives the graph a pure source input and a pure sink output, adding fresh
// unit-gain terminals when needed.
SfgGraph augment_terminals(const SfgGraph& g);
// Adds the output -> input branch carrying 1/G.
SfgGraph close_graph(const SfgGraph& g);
// insert_parallel_nodes followed by augment_terminals.
SfgGraph preprocess(const SfgGraph& g);

// Throws Error(kPrecondition) describing the first violated invariant of a
// preprocessed (and, if closed, closed) graph.
void check_preprocessed(const SfgGraph& g);

bool is_valid_symbol_name(std::string_view name);

}  // namespace sfg
