#include "sfg/format.hpp"

#include <fmt/format.h>

#include <cmath>
#include <set>

#include "sfg/error.hpp"

namespace sfg {

using nlohmann::json;

namespace {

json coeff_array(const Poly& p) {
  json arr = json::array();
  for (double c : p.coeffs()) arr.push_back(c);
  return arr;
}

// JSON has no infinities; unbounded Routh entries go out as strings.
json finite_or_text(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : "-inf";
}

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json transfer_to_json(const TransferFunction& tf) {
  json terms = json::array();
  auto emit = [&](const std::map<Monomial, Poly>& side, const char* tag) {
    for (const auto& [m, p] : side) {
      terms.push_back({{"symbols", m.symbol_list()}, {"numerator", coeff_array(p)}, {"denominator_side", tag}});
    }
  };
  emit(tf.numerator, "B");
  emit(tf.denominator, "A");
  return {{"variable", std::string(1, tf.variable)}, {"terms", std::move(terms)}};
}

TransferFunction transfer_from_json(const json& doc) {
  try {
    TransferFunction tf;
    const std::string var = doc.value("variable", std::string("s"));
    if (var != "s" && var != "z") throw Error(ErrorCode::kParse, fmt::format("variable must be s or z, got '{}'", var));
    tf.variable = var[0];
    for (const auto& term : doc.at("terms")) {
      const auto symbols = term.value("symbols", std::vector<std::string>{});
      for (const auto& s : symbols) {
        if (!is_valid_symbol_name(s)) throw Error(ErrorCode::kParse, fmt::format("invalid symbol name '{}'", s));
      }
      Poly p(term.at("numerator").get<std::vector<double>>());
      const std::string side = term.at("denominator_side").get<std::string>();
      std::map<Monomial, Poly>* target = nullptr;
      if (side == "B") {
        target = &tf.numerator;
      } else if (side == "A") {
        target = &tf.denominator;
      } else {
        throw Error(ErrorCode::kParse, fmt::format("denominator_side must be A or B, got '{}'", side));
      }
      Monomial m(symbols);
      auto [it, inserted] = target->emplace(m, p);
      if (!inserted) it->second += p;
    }
    if (tf.denominator.empty()) throw Error(ErrorCode::kParse, "transfer function has no A terms");
    return tf;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("malformed transfer function: {}", e.what()));
  }
}

std::string render_transfer_structured(const TransferFunction& tf) { return transfer_to_json(tf).dump(2) + "\n"; }

std::string render_transfer_table(const TransferFunction& tf) {
  std::set<Monomial> monomials;
  int top = 0;
  for (const auto* side : {&tf.numerator, &tf.denominator}) {
    for (const auto& [m, p] : *side) {
      monomials.insert(m);
      top = std::max(top, p.degree());
    }
  }
  const bool numeric = tf.is_numeric();
  const std::string var(1, tf.variable);
  auto header = [&](const char* side, const Monomial& m) {
    std::string h = fmt::format("{}({})", side, var);
    if (!numeric) h += ": " + m.label();
    return h;
  };

  std::vector<std::string> heads;
  for (const auto& m : monomials) heads.push_back(header("B", m));
  for (const auto& m : monomials) heads.push_back(header("A", m));
  std::size_t width = 14;
  for (const auto& h : heads) width = std::max(width, h.size() + 2);

  std::string out = fmt::format("{:<12}", "Power of " + var);
  for (const auto& h : heads) out += fmt::format("{:>{}}", h, width);
  out += '\n';
  for (int k = 0; k <= top; ++k) {
    out += fmt::format("{:<12}", k);
    for (const auto* side : {&tf.numerator, &tf.denominator}) {
      for (const auto& m : monomials) {
        auto it = side->find(m);
        const double c = it == side->end() ? 0.0 : it->second[static_cast<std::size_t>(k)];
        out += fmt::format("{:>{}.6f}", c, width);
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_sweep_csv(std::span<const FrequencyPoint> points) {
  std::string out = "omega,re,im,mag_db,phase_deg\n";
  for (const auto& p : points) {
    out += fmt::format("{:.10g},{:.10g},{:.10g},{:.10g},{:.10g}\n", p.omega, p.value.real(), p.value.imag(),
                       p.magnitude_db, p.phase_deg);
  }
  return out;
}

json sweep_to_json(std::span<const FrequencyPoint> points) {
  json arr = json::array();
  for (const auto& p : points) {
    arr.push_back({{"omega", p.omega},
                   {"re", p.value.real()},
                   {"im", p.value.imag()},
                   {"mag_db", p.magnitude_db},
                   {"phase_deg", p.phase_deg}});
  }
  return arr;
}

json routh_to_json(const RouthReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r = json::array();
    for (double x : row) r.push_back(finite_or_text(x));
    rows.push_back(std::move(r));
  }
  json degeneracies = json::array();
  for (const auto& d : report.degeneracies) {
    degeneracies.push_back(
        {{"kind", d.kind == RouthDegeneracy::Kind::kEpsilon ? "epsilon" : "auxiliary_row"}, {"row", d.row}});
  }
  return {{"rows", std::move(rows)},
          {"first_column_signs", report.first_column_signs},
          {"sign_changes", report.sign_changes},
          {"verdict", std::string(to_string(report.verdict))},
          {"degeneracies", std::move(degeneracies)}};
}

json roots_to_json(const RootSet& roots) {
  json arr = json::array();
  for (Complex z : roots.roots) arr.push_back(complex_pair(z));
  return {{"roots", std::move(arr)}, {"residual", roots.residual}};
}

std::string render_loops(std::span<const LoopRec> loops, std::span<const SymbolicGain> gains) {
  std::string out = fmt::format("{} loop(s)\n", loops.size());
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto& l = loops[i];
    out += fmt::format("L{} nodes [{}] branches [{}]", l.index, fmt::join(l.node_seq, " "),
                       fmt::join(l.branch_ids, " "));
    if (i < gains.size()) {
      out += fmt::format(" gain {} * ({})", gains[i].monomial.label(), to_pretty(gains[i].rational()));
    }
    out += '\n';
  }
  return out;
}

std::string render_combos(std::span<const ComboTable> tables) {
  std::string out;
  for (const auto& t : tables) {
    out += fmt::format("order {}: {} combination(s)\n", t.order, t.rows.size());
    for (const auto& row : t.rows) {
      out += fmt::format("  {{{}}} {} * ({})\n", fmt::join(row.loops, ","), row.gain.monomial.label(),
                         to_pretty(row.gain.rational()));
    }
  }
  return out;
}

std::pair<std::string, RationalFn> parse_symbol_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw Error(ErrorCode::kParse, fmt::format("expected SYMBOL=num/den, got '{}'", text));
  }
  std::string name(text.substr(0, eq));
  if (!is_valid_symbol_name(name)) throw Error(ErrorCode::kParse, fmt::format("invalid symbol name '{}'", name));
  std::string_view value = text.substr(eq + 1);
  // Split at the first '/' outside brackets.
  int depth = 0;
  std::size_t slash = std::string_view::npos;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] == '[') ++depth;
    if (value[i] == ']') --depth;
    if (value[i] == '/' && depth == 0) {
      slash = i;
      break;
    }
  }
  Poly num = parse_poly_list(value.substr(0, slash));
  Poly den{1.0};
  if (slash != std::string_view::npos) den = parse_poly_list(value.substr(slash + 1));
  if (den.is_zero()) throw Error(ErrorCode::kParse, fmt::format("zero denominator for symbol '{}'", name));
  return {std::move(name), RationalFn(std::move(num), std::move(den))};
}

}  // namespace sfg
