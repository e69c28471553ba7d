#pragma once

#include <span>
#include <vector>

#include "sfg/combos.hpp"
#include "sfg/graph.hpp"
#include "sfg/loops.hpp"
#include "sfg/shannon.hpp"

namespace sfg {

struct PipelineOptions {
  bool monic = false;
  double rel_tol = kDefaultTidyTol;
  std::size_t loop_cap = kDefaultLoopCap;
  char variable = 's';
};

/// Every intermediate of one transfer-function computation, kept for the
/// debugging dumps.
struct PipelineResult {
  SfgGraph closed;
  std::vector<LoopRec> loops;
  std::vector<SymbolicGain> gains;
  std::vector<ComboTable> tables;
  SymbolicRational f;
  TransferFunction tf;
};

// Input -> output transfer function of an unclosed graph: preprocess, close,
// enumerate loops and non-touching combinations, evaluate f(1/G), split.
PipelineResult run_pipeline(const SfgGraph& g, const PipelineOptions& opts = {});
inline TransferFunction compute_transfer(const SfgGraph& g, const PipelineOptions& opts = {}) {
  return run_pipeline(g, opts).tf;
}

// One transfer function per input node, all to the same output.
std::vector<TransferFunction> transfer_multi_input(const SfgGraph& g, std::span<const int> inputs,
                                                   int output, const PipelineOptions& opts = {});

}  // namespace sfg
