#include <fmt/format.h>

#include <algorithm>
#include <json.hpp>
#include <set>

#include "sfg/error.hpp"
#include "sfg/graph.hpp"

namespace sfg {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kParse, msg); }

int get_int(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(fmt::format("{}: missing \"{}\"", where, key));
  if (!it->is_number_integer()) fail(fmt::format("{}: \"{}\" must be an integer", where, key));
  return it->get<int>();
}

Poly get_poly(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(fmt::format("{}: missing \"{}\"", where, key));
  if (!it->is_array() || it->empty()) {
    fail(fmt::format("{}: \"{}\" must be a non-empty coefficient list", where, key));
  }
  std::vector<double> v;
  for (const auto& c : *it) {
    if (!c.is_number()) fail(fmt::format("{}: \"{}\" holds a non-number", where, key));
    v.push_back(c.get<double>());
  }
  try {
    return Poly(std::move(v));
  } catch (const Error& e) {
    fail(fmt::format("{}: {}", where, e.what()));
  }
}

std::vector<std::string> get_symbols(const json& obj, const std::string& where) {
  std::vector<std::string> out;
  auto it = obj.find("symbols");
  if (it == obj.end()) return out;
  if (!it->is_array()) fail(fmt::format("{}: \"symbols\" must be a list", where));
  for (const auto& s : *it) {
    if (!s.is_string()) fail(fmt::format("{}: symbol names must be strings", where));
    const auto name = s.get<std::string>();
    if (name == kInvGName) fail(fmt::format("{}: \"{}\" is reserved", where, kInvGName));
    if (!is_valid_symbol_name(name)) fail(fmt::format("{}: invalid symbol name \"{}\"", where, name));
    out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    fail(fmt::format("{}: repeated symbol", where));
  }
  return out;
}

int detect_terminal(const SfgGraph& g, bool input) {
  std::vector<int> candidates;
  for (const auto& n : g.nodes) {
    if ((input ? g.in_degree(n.id) : g.out_degree(n.id)) == 0) candidates.push_back(n.id);
  }
  if (candidates.size() != 1) {
    throw Error(ErrorCode::kAmbiguousTerminal,
                fmt::format("{} not designated and {} nodes have zero {}-degree", input ? "input" : "output",
                            candidates.size(), input ? "in" : "out"));
  }
  return candidates.front();
}

}  // namespace

SfgGraph parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(fmt::format("malformed graph file: {}", e.what()));
  }
  if (!doc.is_object()) fail("graph file must be a JSON object");

  SfgGraph g;
  auto nodes = doc.find("nodes");
  if (nodes == doc.end() || !nodes->is_array()) fail("missing \"nodes\" list");
  std::set<int> ids;
  for (std::size_t i = 0; i < nodes->size(); ++i) {
    const json& n = (*nodes)[i];
    const auto where = fmt::format("node entry {}", i);
    if (!n.is_object()) fail(where + ": must be an object");
    Node node{get_int(n, "id", where), {}};
    if (auto l = n.find("label"); l != n.end() && !l->is_null()) {
      if (!l->is_string()) fail(where + ": \"label\" must be a string");
      node.label = l->get<std::string>();
    }
    if (!ids.insert(node.id).second) {
      throw Error(ErrorCode::kDuplicateNode, fmt::format("duplicate node id {}", node.id));
    }
    g.nodes.push_back(std::move(node));
  }
  std::sort(g.nodes.begin(), g.nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });

  auto branches = doc.find("branches");
  if (branches == doc.end() || !branches->is_array()) fail("missing \"branches\" list");
  std::set<std::string> used_symbols;
  for (std::size_t i = 0; i < branches->size(); ++i) {
    const json& b = (*branches)[i];
    auto where = fmt::format("branch {}", i);
    if (!b.is_object()) fail(where + ": must be an object");
    const int from = get_int(b, "from", where);
    const int to = get_int(b, "to", where);
    where = fmt::format("branch {} ({}->{})", i, from, to);
    for (int end : {from, to}) {
      if (!ids.contains(end)) throw Error(ErrorCode::kUnknownNode, fmt::format("{}: unknown node {}", where, end));
    }
    Poly num = get_poly(b, "num", where);
    Poly den = b.contains("den") ? get_poly(b, "den", where) : Poly{1.0};
    if (den.is_zero()) fail(where + ": zero denominator");
    auto syms = get_symbols(b, where);
    used_symbols.insert(syms.begin(), syms.end());
    g.branches.push_back(Branch{static_cast<int>(i), from, to, RationalFn(std::move(num), std::move(den)),
                                std::move(syms), false});
  }

  if (doc.contains("symbols")) {
    g.symbols = get_symbols(doc, "symbol declaration");
    for (const auto& s : used_symbols) {
      if (!std::binary_search(g.symbols.begin(), g.symbols.end(), s)) {
        fail(fmt::format("symbol \"{}\" used on a branch but not declared", s));
      }
    }
  } else {
    g.symbols.assign(used_symbols.begin(), used_symbols.end());
  }

  for (const char* key : {"input", "output"}) {
    const bool is_input = key[0] == 'i';
    int& slot = is_input ? g.input : g.output;
    if (auto it = doc.find(key); it != doc.end() && !it->is_null()) {
      if (!it->is_number_integer()) fail(fmt::format("\"{}\" must be an integer node id", key));
      slot = it->get<int>();
      if (!ids.contains(slot)) {
        throw Error(ErrorCode::kUnknownNode, fmt::format("{}: unknown node {}", key, slot));
      }
    } else {
      slot = detect_terminal(g, is_input);
    }
  }
  return g;
}

std::string serialize_graph(const SfgGraph& g) {
  json doc = json::object();
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    json jn = {{"id", n.id}};
    if (!n.label.empty()) jn["label"] = n.label;
    nodes.push_back(std::move(jn));
  }
  json branches = json::array();
  for (const auto& b : g.branches) {
    json jb = {{"from", b.from}, {"to", b.to}, {"num", b.gain.num.coeffs()}, {"den", b.gain.den.coeffs()}};
    if (b.inv_g) {
      jb["symbols"] = json::array({std::string(kInvGName)});
    } else if (!b.symbols.empty()) {
      jb["symbols"] = b.symbols;
    }
    branches.push_back(std::move(jb));
  }
  doc["nodes"] = std::move(nodes);
  doc["branches"] = std::move(branches);
  doc["input"] = g.input;
  doc["output"] = g.output;
  if (!g.symbols.empty()) doc["symbols"] = g.symbols;
  return doc.dump(2) + "\n";
}

}  // namespace sfg
