#include "sfg/pipeline.hpp"

#include <fmt/format.h>

#include "sfg/error.hpp"

namespace sfg {

PipelineResult run_pipeline(const SfgGraph& g, const PipelineOptions& opts) {
  PipelineResult r;
  r.closed = close_graph(preprocess(g));
  r.loops = find_loops(r.closed, opts.loop_cap);
  r.gains.reserve(r.loops.size());
  for (const auto& loop : r.loops) r.gains.push_back(loop_gain(loop, r.closed));
  const TouchMatrix touch = touch_matrix(r.loops);
  r.tables = all_combos(touch, r.gains);
  r.f = shannon_sum(r.tables, opts.rel_tol);
  r.tf = extract_transfer(r.f, ExtractOptions{opts.monic, opts.rel_tol});
  r.tf.variable = opts.variable;
  return r;
}

std::vector<TransferFunction> transfer_multi_input(const SfgGraph& g, std::span<const int> inputs,
                                                   int output, const PipelineOptions& opts) {
  std::vector<TransferFunction> out;
  for (int in : inputs) {
    if (!g.has_node(in)) throw Error(ErrorCode::kUnknownNode, fmt::format("unknown input node {}", in));
    SfgGraph single = g;
    single.input = in;
    single.output = output;
    out.push_back(compute_transfer(single, opts));
  }
  return out;
}

}  // namespace sfg
