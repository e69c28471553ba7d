#include "sfg/graph.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include "sfg/error.hpp"

namespace sfg {

bool SfgGraph::has_node(int id) const {
  return std::binary_search(nodes.begin(), nodes.end(), Node{id, {}},
                            [](const Node& a, const Node& b) { return a.id < b.id; });
}

int SfgGraph::max_node_id() const { return nodes.empty() ? 0 : nodes.back().id; }

int SfgGraph::next_branch_id() const {
  int next = 0;
  for (const auto& b : branches) next = std::max(next, b.id + 1);
  return next;
}

int SfgGraph::add_fresh_node(std::string label) {
  const int id = max_node_id() + 1;
  nodes.push_back(Node{id, std::move(label)});
  return id;
}

void SfgGraph::add_branch(int from, int to, RationalFn gain, std::vector<std::string> syms) {
  std::sort(syms.begin(), syms.end());
  branches.push_back(Branch{next_branch_id(), from, to, std::move(gain), std::move(syms), false});
}

int SfgGraph::in_degree(int node) const {
  return static_cast<int>(std::count_if(branches.begin(), branches.end(),
                                        [&](const Branch& b) { return b.to == node; }));
}

int SfgGraph::out_degree(int node) const {
  return static_cast<int>(std::count_if(branches.begin(), branches.end(),
                                        [&](const Branch& b) { return b.from == node; }));
}

bool SfgGraph::has_parallel_branches() const {
  std::set<std::pair<int, int>> seen;
  for (const auto& b : branches) {
    if (!seen.emplace(b.from, b.to).second) return true;
  }
  return false;
}

bool is_valid_symbol_name(std::string_view name) {
  if (name.empty() || name == kInvGName) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

SfgGraph insert_parallel_nodes(const SfgGraph& g) {
  if (g.closed) throw Error(ErrorCode::kPrecondition, "insert_parallel_nodes on a closed graph");
  SfgGraph out = g;
  out.branches.clear();
  int next_id = g.next_branch_id();
  std::set<std::pair<int, int>> seen;
  for (const Branch& b : g.branches) {
    if (seen.emplace(b.from, b.to).second) {
      out.branches.push_back(b);
      continue;
    }
    const int fresh = out.add_fresh_node();
    Branch head = b;
    head.to = fresh;
    out.branches.push_back(std::move(head));
    out.branches.push_back(Branch{next_id++, fresh, b.to, RationalFn(1.0), {}, false});
  }
  return out;
}

SfgGraph augment_terminals(const SfgGraph& g) {
  if (g.closed) throw Error(ErrorCode::kPrecondition, "augment_terminals on a closed graph");
  SfgGraph out = g;
  const bool shared = g.input == g.output;
  if (shared || g.in_degree(g.input) > 0) {
    const int src = out.add_fresh_node();
    out.add_branch(src, g.input, RationalFn(1.0));
    out.input = src;
  }
  if (shared || g.out_degree(g.output) > 0) {
    const int sink = out.add_fresh_node();
    out.add_branch(g.output, sink, RationalFn(1.0));
    out.output = sink;
  }
  return out;
}

SfgGraph preprocess(const SfgGraph& g) { return augment_terminals(insert_parallel_nodes(g)); }

void check_preprocessed(const SfgGraph& g) {
  if (g.has_parallel_branches()) {
    throw Error(ErrorCode::kPrecondition, "graph has parallel branches");
  }
  int closing = 0;
  for (const auto& b : g.branches) {
    if (!g.has_node(b.from) || !g.has_node(b.to)) {
      throw Error(ErrorCode::kUnknownNode, fmt::format("branch {} has an undeclared endpoint", b.id));
    }
    if (b.inv_g) {
      ++closing;
      if (b.from != g.output || b.to != g.input) {
        throw Error(ErrorCode::kPrecondition, "closing branch must run output -> input");
      }
      continue;
    }
    if (b.to == g.input) {
      throw Error(ErrorCode::kPrecondition, fmt::format("input node {} has incoming branch {}", g.input, b.id));
    }
    if (b.from == g.output) {
      throw Error(ErrorCode::kPrecondition, fmt::format("output node {} has outgoing branch {}", g.output, b.id));
    }
  }
  if (closing != (g.closed ? 1 : 0)) {
    throw Error(ErrorCode::kPrecondition, "closed flag does not match the closing branch count");
  }
}

SfgGraph close_graph(const SfgGraph& g) {
  if (g.closed) throw Error(ErrorCode::kAlreadyClosed, "graph is already closed");
  check_preprocessed(g);
  SfgGraph out = g;
  out.branches.push_back(Branch{g.next_branch_id(), g.output, g.input, RationalFn(1.0), {}, true});
  out.closed = true;
  return out;
}

}  // namespace sfg
