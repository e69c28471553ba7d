#include "sfg/loops.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

#include "sfg/error.hpp"

namespace sfg {

TouchMatrix::TouchMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

TouchMatrix TouchMatrix::from_relation(std::size_t n, const std::vector<std::vector<bool>>& touches) {
  TouchMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !touches[i][j]) m.set_disjoint(i, j);
    }
  }
  return m;
}

bool TouchMatrix::touches(std::size_t i, std::size_t j) const {
  return !((bits_[i * words_ + j / 64] >> (j % 64)) & 1u);
}

void TouchMatrix::set_disjoint(std::size_t i, std::size_t j) {
  bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
}

namespace {

// Johnson's elementary circuit search over dense vertex indices.
class CircuitFinder {
 public:
  CircuitFinder(std::vector<std::vector<int>> succ, std::size_t cap)
      : succ_(std::move(succ)), n_(static_cast<int>(succ_.size())), cap_(cap),
        blocked_(n_, false), blocked_by_(n_), in_component_(n_, false) {}

  std::vector<std::vector<int>> run(std::vector<std::vector<int>> circuits) {
    out_ = std::move(circuits);
    for (start_ = 0; start_ < n_; ++start_) {
      const auto comp = component_of_start();
      if (comp.size() < 2) continue;
      std::fill(in_component_.begin(), in_component_.end(), false);
      for (int v : comp) {
        in_component_[v] = true;
        blocked_[v] = false;
        blocked_by_[v].clear();
      }
      circuit(start_);
    }
    return std::move(out_);
  }

 private:
  // Strongly connected component containing start_ within the subgraph
  // induced by vertices >= start_ (Tarjan, iterative).
  std::vector<int> component_of_start() {
    std::vector<int> index(n_, -1), low(n_, 0);
    std::vector<bool> on_stack(n_, false);
    std::vector<int> stack;
    std::vector<std::pair<int, std::size_t>> work;
    int counter = 0;
    std::vector<int> result;

    auto push = [&](int v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      work.emplace_back(v, 0);
    };
    push(start_);
    while (!work.empty()) {
      auto& [v, pos] = work.back();
      if (pos < succ_[v].size()) {
        const int w = succ_[v][pos++];
        if (w < start_) continue;
        if (index[w] < 0) {
          push(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const int done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        if (done == start_) result = std::move(comp);
      }
    }
    return result;
  }

  void unblock(int u) {
    blocked_[u] = false;
    auto pending = std::move(blocked_by_[u]);
    blocked_by_[u].clear();
    for (int w : pending) {
      if (blocked_[w]) unblock(w);
    }
  }

  bool circuit(int v) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = true;
    for (int w : succ_[v]) {
      if (!in_component_[w]) continue;
      if (w == start_) {
        if (out_.size() >= cap_) {
          throw Error(ErrorCode::kLoopLimit, fmt::format("more than {} loops; raise the cap", cap_));
        }
        out_.push_back(path_);
        found = true;
      } else if (!blocked_[w] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (int w : succ_[v]) {
        if (!in_component_[w]) continue;
        auto& list = blocked_by_[w];
        if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
      }
    }
    path_.pop_back();
    return found;
  }

  std::vector<std::vector<int>> succ_;
  int n_;
  std::size_t cap_;
  int start_ = 0;
  std::vector<bool> blocked_;
  std::vector<std::vector<int>> blocked_by_;
  std::vector<bool> in_component_;
  std::vector<int> path_;
  std::vector<std::vector<int>> out_;
};

}  // namespace

std::vector<LoopRec> find_loops(const SfgGraph& g, std::size_t cap) {
  if (g.has_parallel_branches()) {
    throw Error(ErrorCode::kPrecondition, "find_loops requires a graph without parallel branches");
  }
  std::map<int, int> dense;
  for (const auto& n : g.nodes) dense.emplace(n.id, static_cast<int>(dense.size()));
  std::vector<int> id_of(dense.size());
  for (const auto& [id, idx] : dense) id_of[idx] = id;

  std::map<std::pair<int, int>, int> branch_of;
  std::vector<std::vector<int>> succ(dense.size());
  std::vector<std::vector<int>> circuits;
  for (const auto& b : g.branches) {
    const int u = dense.at(b.from);
    const int v = dense.at(b.to);
    branch_of[{u, v}] = b.id;
    if (u == v) {
      circuits.push_back({u});  // self-loops come straight from the adjacency
    } else {
      succ[u].push_back(v);
    }
  }
  for (auto& s : succ) std::sort(s.begin(), s.end());
  if (circuits.size() > cap) {
    throw Error(ErrorCode::kLoopLimit, fmt::format("more than {} loops; raise the cap", cap));
  }

  circuits = CircuitFinder(std::move(succ), cap).run(std::move(circuits));

  std::vector<LoopRec> loops;
  loops.reserve(circuits.size());
  for (const auto& c : circuits) {
    LoopRec rec;
    for (std::size_t k = 0; k < c.size(); ++k) {
      rec.node_seq.push_back(id_of[c[k]]);
      rec.branch_ids.push_back(branch_of.at({c[k], c[(k + 1) % c.size()]}));
    }
    rec.node_set = rec.node_seq;
    std::sort(rec.node_set.begin(), rec.node_set.end());
    loops.push_back(std::move(rec));
  }
  std::sort(loops.begin(), loops.end(),
            [](const LoopRec& a, const LoopRec& b) { return a.node_seq < b.node_seq; });
  for (std::size_t i = 0; i < loops.size(); ++i) loops[i].index = static_cast<int>(i);
  return loops;
}

SymbolicGain loop_gain(const LoopRec& loop, const SfgGraph& g) {
  SymbolicGain out;
  for (int id : loop.branch_ids) {
    auto it = std::find_if(g.branches.begin(), g.branches.end(), [&](const Branch& b) { return b.id == id; });
    if (it == g.branches.end()) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("loop references missing branch {}", id));
    }
    out.gain = out.gain * FactoredRational::from(it->gain);
    out.monomial = out.monomial * Monomial(it->symbols, it->inv_g ? 1 : 0);
  }
  return out;
}

TouchMatrix touch_matrix(std::span<const LoopRec> loops) {
  TouchMatrix m(loops.size());
  for (std::size_t i = 0; i < loops.size(); ++i) {
    for (std::size_t j = i + 1; j < loops.size(); ++j) {
      const auto& a = loops[i].node_set;
      const auto& b = loops[j].node_set;
      // Both sorted: a linear merge decides intersection.
      std::size_t p = 0, q = 0;
      bool shared = false;
      while (p < a.size() && q < b.size()) {
        if (a[p] == b[q]) { shared = true; break; }
        if (a[p] < b[q]) ++p; else ++q;
      }
      if (!shared) m.set_disjoint(i, j);
    }
  }
  return m;
}

}  // namespace sfg
