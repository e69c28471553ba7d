// sfg: transfer functions of signal flow graphs, plus analyses.
//
//   sfg compute <file> [--monic] [--format table|structured]
//   sfg analyze <file|--tf inline> [--bode] [--nyquist] [--routh] [--roots] [--reduce N]
//   sfg serve [--port P]
//   sfg oracle <file> --s RE,IM [--set SYM=num/den]

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sfg/format.hpp"
#include "sfg/service.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoForwardPath = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sfg::Error(sfg::ErrorCode::kParse, fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, sfg::RationalFn> parse_sets(const std::vector<std::string>& sets) {
  std::map<std::string, sfg::RationalFn> out;
  for (const auto& s : sets) {
    auto [name, value] = sfg::parse_symbol_assignment(s);
    if (!out.emplace(name, value).second) {
      throw sfg::Error(sfg::ErrorCode::kInvalidArgument, fmt::format("symbol '{}' set twice", name));
    }
  }
  return out;
}

std::string overlay_csv(const std::vector<sfg::FrequencyPoint>& a, const std::vector<sfg::FrequencyPoint>& b) {
  std::string out = "omega,re,im,mag_db,phase_deg,reduced_re,reduced_im,reduced_mag_db,reduced_phase_deg\n";
  for (std::size_t k = 0; k < a.size(); ++k) {
    out += fmt::format("{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g}\n", a[k].omega,
                       a[k].value.real(), a[k].value.imag(), a[k].magnitude_db, a[k].phase_deg, b[k].value.real(),
                       b[k].value.imag(), b[k].magnitude_db, b[k].phase_deg);
  }
  return out;
}

struct ComputeArgs {
  std::string file;
  bool monic = false;
  std::string format = "table";
  std::string variable = "s";
  bool dump_loops = false;
  bool dump_combos = false;
};

int run_compute(const ComputeArgs& a) {
  sfg::PipelineOptions opts;
  opts.monic = a.monic;
  opts.variable = a.variable[0];
  const auto result = sfg::run_pipeline(sfg::parse_graph(read_file(a.file)), opts);
  if (a.dump_loops) std::cerr << sfg::render_loops(result.loops, result.gains);
  if (a.dump_combos) std::cerr << sfg::render_combos(result.tables);
  std::cout << (a.format == "structured" ? sfg::render_transfer_structured(result.tf)
                                         : sfg::render_transfer_table(result.tf));
  return kExitOk;
}

struct AnalyzeArgs {
  std::string file;
  std::string tf;
  std::string format = "auto";
  std::vector<std::string> sets;
  bool monic = false;
  int reduce = 0;
  sfg::AnalyzeOptions opts;
};

int run_analyze(AnalyzeArgs& a) {
  if (a.file.empty() == a.tf.empty()) {
    throw sfg::Error(sfg::ErrorCode::kInvalidArgument, "give exactly one of <file> or --tf");
  }
  if (a.reduce != 0) a.opts.reduce = a.reduce;
  sfg::PipelineOptions popts;
  popts.monic = a.monic;
  sfg::TransferFunction tf =
      a.tf.empty() ? sfg::load_transfer(read_file(a.file), popts) : sfg::parse_transfer_text(a.tf);
  tf = sfg::resolve_symbols(tf, parse_sets(a.sets));

  const auto& o = a.opts;
  const bool csv_shape = o.wants_sweep() && !o.routh && !o.roots;
  const bool csv = a.format == "csv" || (a.format == "auto" && csv_shape);
  if (csv) {
    if (!o.wants_sweep()) throw sfg::Error(sfg::ErrorCode::kInvalidArgument, "csv output needs --bode or --nyquist");
    const auto omegas = sfg::log_sweep(o.wmin, o.wmax, o.points);
    const auto original = sfg::frequency_response(tf, omegas);
    if (o.reduce) {
      const auto reduced = sfg::reduce_order_cf(tf, *o.reduce);
      std::cout << overlay_csv(original, sfg::frequency_response(reduced.tf, omegas));
    } else {
      std::cout << sfg::render_sweep_csv(original);
    }
    return kExitOk;
  }
  std::cout << sfg::analyze_json(tf, o).dump(2) << "\n";
  return kExitOk;
}

int run_serve(const std::string& host, int port) {
  sfg::Server server;
  const int bound = server.bind(host, port);
  if (bound < 0) throw sfg::Error(sfg::ErrorCode::kInvalidArgument, fmt::format("cannot bind {}:{}", host, port));
  std::cerr << fmt::format("listening on http://{}:{}\n", host, bound);
  return server.listen_after_bind() ? kExitOk : kExitError;
}

int run_oracle(const std::string& file, const std::string& s_text, const std::vector<std::string>& sets) {
  const auto comma = s_text.find(',');
  if (comma == std::string::npos) {
    throw sfg::Error(sfg::ErrorCode::kParse, fmt::format("--s expects RE,IM, got '{}'", s_text));
  }
  double re = 0.0, im = 0.0;
  try {
    re = std::stod(s_text.substr(0, comma));
    im = std::stod(s_text.substr(comma + 1));
  } catch (const std::exception&) {
    throw sfg::Error(sfg::ErrorCode::kParse, fmt::format("--s expects RE,IM, got '{}'", s_text));
  }
  const sfg::Complex s0(re, im);
  const sfg::SfgGraph g = sfg::parse_graph(read_file(file));
  sfg::SymbolValues values;
  for (const auto& [name, r] : parse_sets(sets)) values[name] = r(s0);
  const sfg::Complex x = sfg::numeric_oracle(g, s0, values);
  std::cout << fmt::format("{{\"re\": {:.17g}, \"im\": {:.17g}}}\n", x.real(), x.imag());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signal flow graph transfer functions"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Transfer function of a graph file");
  c->add_option("file", compute.file, "Graph file (JSON)")->required();
  c->add_flag("--monic", compute.monic, "Scale A so its plain leading coefficient is 1");
  c->add_option("--format", compute.format, "Output format")->check(CLI::IsMember({"table", "structured"}));
  c->add_option("--variable", compute.variable, "Polynomial variable")->check(CLI::IsMember({"s", "z"}));
  c->add_flag("--dump-loops", compute.dump_loops, "Print the loop list to stderr");
  c->add_flag("--dump-combos", compute.dump_combos, "Print the non-touching combinations to stderr");

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Frequency response, stability, roots and order reduction");
  an->add_option("file", analyze.file, "Graph or transfer-function file (JSON)");
  an->add_option("--tf", analyze.tf, "Inline transfer function, e.g. \"num=[8,2] den=[2,3,1]\"");
  an->add_flag("--bode", analyze.opts.bode, "Frequency sweep");
  an->add_flag("--nyquist", analyze.opts.nyquist, "Frequency sweep (real/imaginary columns)");
  an->add_flag("--routh", analyze.opts.routh, "Routh table and stability verdict");
  an->add_flag("--roots", analyze.opts.roots, "Poles and zeros");
  an->add_option("--reduce", analyze.reduce, "Continued-fraction reduction to order N")->check(CLI::PositiveNumber);
  an->add_option("--wmin", analyze.opts.wmin, "Sweep start (rad/s)")->check(CLI::PositiveNumber);
  an->add_option("--wmax", analyze.opts.wmax, "Sweep end (rad/s)")->check(CLI::PositiveNumber);
  an->add_option("--points", analyze.opts.points, "Sweep points")->check(CLI::Range(2, 1000000));
  an->add_option("--set", analyze.sets, "Symbol value, e.g. V=1/[3,1]")->allow_extra_args(false);
  an->add_flag("--monic", analyze.monic, "Scale A so its plain leading coefficient is 1");
  an->add_option("--format", analyze.format, "auto: CSV for sweeps alone, JSON otherwise")
      ->check(CLI::IsMember({"auto", "json", "csv"}));

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* sv = app.add_subcommand("serve", "HTTP service");
  sv->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  sv->add_option("--host", host, "Bind address");

  std::string oracle_file, oracle_s;
  std::vector<std::string> oracle_sets;
  auto* orc = app.add_subcommand("oracle", "Solve the node equations at one complex point");
  orc->add_option("file", oracle_file, "Graph file (JSON)")->required();
  orc->add_option("--s", oracle_s, "Evaluation point RE,IM")->required();
  orc->add_option("--set", oracle_sets, "Symbol value, e.g. V=1/[3,1]")->allow_extra_args(false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c) return run_compute(compute);
    if (*an) return run_analyze(analyze);
    if (*sv) return run_serve(host, port);
    if (*orc) return run_oracle(oracle_file, oracle_s, oracle_sets);
  } catch (const sfg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == sfg::ErrorCode::kNoForwardPath ? kExitNoForwardPath : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
