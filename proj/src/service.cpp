#include "sfg/service.hpp"

#include <fmt/format.h>
#include <httplib.h>

#include <algorithm>
#include <cmath>

#include "sfg/format.hpp"

namespace sfg {

using nlohmann::json;

namespace {

bool mentions_symbol(const TransferFunction& tf, const std::string& symbol) {
  for (const auto* side : {&tf.numerator, &tf.denominator}) {
    for (const auto& [m, p] : *side) {
      if (m.power(symbol) > 0) return true;
    }
  }
  return false;
}

json moment_report(const TransferFunction& original, const TransferFunction& reduced, int count) {
  const auto o = taylor_coefficients(original.numeric_numerator(), original.numeric_denominator(), count);
  const auto r = taylor_coefficients(reduced.numeric_numerator(), reduced.numeric_denominator(), count);
  double scale = 0.0;
  for (double x : o) scale = std::max(scale, std::abs(x));
  double worst = 0.0;
  for (std::size_t k = 0; k < o.size(); ++k) {
    const double ref = std::max(std::abs(o[k]), 1e-12 * scale);
    if (ref > 0.0) worst = std::max(worst, std::abs(r[k] - o[k]) / ref);
  }
  return {{"count", count}, {"original", o}, {"reduced", r}, {"max_relative_error", worst}};
}

AnalyzeOptions options_from_json(const json& j) {
  AnalyzeOptions o;
  o.bode = j.value("bode", false);
  o.nyquist = j.value("nyquist", false);
  o.routh = j.value("routh", false);
  o.roots = j.value("roots", false);
  if (j.contains("reduce") && !j.at("reduce").is_null()) o.reduce = j.at("reduce").get<int>();
  o.wmin = j.value("wmin", o.wmin);
  o.wmax = j.value("wmax", o.wmax);
  o.points = j.value("points", o.points);
  return o;
}

Reply error_reply(const Error& e) { return {http_status(e.code()), error_json(e).dump(2) + "\n"}; }

bool truthy(const std::map<std::string, std::string>& query, const char* key) {
  auto it = query.find(key);
  return it != query.end() && (it->second.empty() || it->second == "1" || it->second == "true");
}

Reply handle_transfer(const std::map<std::string, std::string>& query, std::string_view body) {
  PipelineOptions opts;
  opts.monic = truthy(query, "monic");
  if (auto it = query.find("variable"); it != query.end()) {
    if (it->second != "s" && it->second != "z") {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("variable must be s or z, got '{}'", it->second));
    }
    opts.variable = it->second[0];
  }
  return {200, render_transfer_structured(compute_transfer(parse_graph(body), opts))};
}

Reply handle_analyze(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("request is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "request must be a JSON object");
  try {
    const json options = doc.value("options", json::object());
    PipelineOptions popts;
    popts.monic = options.value("monic", false);
    TransferFunction tf;
    if (doc.contains("graph")) {
      tf = compute_transfer(parse_graph(doc.at("graph").dump()), popts);
    } else if (doc.contains("tf")) {
      const json& t = doc.at("tf");
      tf = t.is_string() ? parse_transfer_text(t.get<std::string>()) : transfer_from_json(t);
    } else {
      throw Error(ErrorCode::kParse, "request needs a \"graph\" or a \"tf\" member");
    }
    std::map<std::string, RationalFn> values;
    const json sets = options.value("set", json::object());
    for (const auto& [name, v] : sets.items()) {
      values.insert(parse_symbol_assignment(name + "=" + v.get<std::string>()));
    }
    tf = resolve_symbols(tf, values);
    return {200, analyze_json(tf, options_from_json(options)).dump(2) + "\n"};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("malformed request: {}", e.what()));
  }
}

}  // namespace

TransferFunction resolve_symbols(const TransferFunction& tf, const std::map<std::string, RationalFn>& values) {
  TransferFunction out = tf;
  for (const auto& [name, value] : values) {
    if (!mentions_symbol(out, name)) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("symbol '{}' does not occur in the transfer function", name));
    }
    out = substitute_symbol(out, name, value);
  }
  return out;
}

TransferFunction parse_transfer_text(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    try {
      return transfer_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, fmt::format("transfer function is not valid JSON: {}", e.what()));
    }
  }
  return TransferFunction::from_rational(parse_rational_text(text));
}

TransferFunction load_transfer(std::string_view text, const PipelineOptions& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("input is not valid JSON: {}", e.what()));
  }
  if (doc.is_object() && doc.contains("terms")) return transfer_from_json(doc);
  return compute_transfer(parse_graph(text), opts);
}

json analyze_json(const TransferFunction& tf, const AnalyzeOptions& opts) {
  if (opts.reduce && *opts.reduce < 1) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("reduce order must be >= 1, got {}", *opts.reduce));
  }
  json out;
  out["transfer"] = transfer_to_json(tf);
  std::vector<double> omegas;
  if (opts.wants_sweep()) omegas = log_sweep(opts.wmin, opts.wmax, opts.points);
  if (opts.routh) out["routh"] = routh_to_json(routh_stability(tf.numeric_denominator()));
  if (opts.roots) {
    const PolesZeros pz = poles_zeros(tf);
    out["roots"] = {{"zeros", roots_to_json(pz.zeros)}, {"poles", roots_to_json(pz.poles)}};
  }
  if (opts.reduce) {
    const ReducedModel m = reduce_order_cf(tf, *opts.reduce);
    json red = {{"order", *opts.reduce},
                {"quotients", m.quotients},
                {"transfer", transfer_to_json(m.tf)},
                {"moments", moment_report(tf, m.tf, 2 * *opts.reduce)}};
    if (opts.wants_sweep()) red["frequency_response"] = sweep_to_json(frequency_response(m.tf, omegas));
    out["reduce"] = std::move(red);
  }
  if (opts.wants_sweep()) out["frequency_response"] = sweep_to_json(frequency_response(tf, omegas));
  return out;
}

json error_json(const Error& e) {
  json out = {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
  if (e.code() == ErrorCode::kNoForwardPath) out["zero_transfer"] = true;
  return out;
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kUnknownNode:
    case ErrorCode::kDuplicateNode:
    case ErrorCode::kAmbiguousTerminal:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kSymbolicInput:
      return 400;
    default:
      return 422;
  }
}

Reply handle_request(std::string_view method, std::string_view path,
                     const std::map<std::string, std::string>& query, std::string_view body) {
  try {
    if (path == "/health") {
      if (method != "GET") return {405, R"({"error": {"code": "method_not_allowed"}})" "\n"};
      return {200, "{\"status\": \"ok\"}\n"};
    }
    if (path == "/api/transfer" || path == "/api/analyze") {
      if (method != "POST") return {405, R"({"error": {"code": "method_not_allowed"}})" "\n"};
      return path == "/api/transfer" ? handle_transfer(query, body) : handle_analyze(body);
    }
    return {404, R"({"error": {"code": "not_found"}})" "\n"};
  } catch (const Error& e) {
    return error_reply(e);
  } catch (const std::exception& e) {
    json out = {{"error", {{"code", "internal"}, {"message", e.what()}}}};
    return {500, out.dump(2) + "\n"};
  }
}

struct Server::Impl {
  httplib::Server http;
};

Server::Server() : impl_(std::make_unique<Impl>()) {
  auto forward = [](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query(req.params.begin(), req.params.end());
    const Reply r = handle_request(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  impl_->http.Get("/health", forward);
  impl_->http.Post("/api/transfer", forward);
  impl_->http.Post("/api/analyze", forward);
}

Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::listen_after_bind() { return impl_->http.listen_after_bind(); }
void Server::stop() { impl_->http.stop(); }
void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace sfg
