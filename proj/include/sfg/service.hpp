#pragma once

#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "sfg/analysis.hpp"
#include "sfg/error.hpp"
#include "sfg/pipeline.hpp"

namespace sfg {

struct AnalyzeOptions {
  bool bode = false;
  bool nyquist = false;
  bool routh = false;
  bool roots = false;
  std::optional<int> reduce;
  double wmin = kDefaultSweepMin;
  double wmax = kDefaultSweepMax;
  std::size_t points = kDefaultSweepPoints;

  bool wants_sweep() const { return bode || nyquist; }
};

// Substitutes each named symbol; symbols not in the transfer function are an
// error so typos do not pass silently.
TransferFunction resolve_symbols(const TransferFunction& tf, const std::map<std::string, RationalFn>& values);

// Inline transfer function: structured JSON ({"terms": ...}) or the
// "num=[..] den=[..]" text form.
TransferFunction parse_transfer_text(std::string_view text);

// A transfer-function document ({"terms": ...}) is taken as is; anything else
// is parsed as a graph and run through the pipeline.
TransferFunction load_transfer(std::string_view text, const PipelineOptions& opts = {});

// {"transfer": ..., "routh": ..., "roots": {"zeros", "poles"}, "reduce": {...},
//  "frequency_response": [...]}, with only the requested sections present.
nlohmann::json analyze_json(const TransferFunction& tf, const AnalyzeOptions& opts);

// Error payload {"error": {"code", "message"}}; no_forward_path also carries
// "zero_transfer": true.
nlohmann::json error_json(const Error& e);
// 400 for malformed input, 422 for inputs the pipeline cannot evaluate.
int http_status(ErrorCode code);

struct Reply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Routes one request: POST /api/transfer, POST /api/analyze, GET /health.
// Pure; safe to call concurrently.
Reply handle_request(std::string_view method, std::string_view path,
                     const std::map<std::string, std::string>& query, std::string_view body);

/// HTTP front end over handle_request.
class Server {
 public:
  Server();
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks serving requests until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sfg
