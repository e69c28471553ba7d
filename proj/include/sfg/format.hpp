#pragma once

#include <json.hpp>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "sfg/analysis.hpp"
#include "sfg/combos.hpp"
#include "sfg/loops.hpp"
#include "sfg/shannon.hpp"

namespace sfg {

// {"variable": "s", "terms": [{"symbols": [...], "numerator": [...],
//  "denominator_side": "B" | "A"}, ...]}; B terms first, each side in
// monomial order. "numerator" holds the ascending coefficients of the term.
nlohmann::json transfer_to_json(const TransferFunction& tf);
TransferFunction transfer_from_json(const nlohmann::json& doc);
std::string render_transfer_structured(const TransferFunction& tf);

// Power-of-s rows, one B column and one A column per symbol monomial.
std::string render_transfer_table(const TransferFunction& tf);

// omega,re,im,mag_db,phase_deg
std::string render_sweep_csv(std::span<const FrequencyPoint> points);
nlohmann::json sweep_to_json(std::span<const FrequencyPoint> points);
nlohmann::json routh_to_json(const RouthReport& report);
nlohmann::json roots_to_json(const RootSet& roots);

std::string render_loops(std::span<const LoopRec> loops, std::span<const SymbolicGain> gains);
std::string render_combos(std::span<const ComboTable> tables);

// "V=1/[3,1]" -> {"V", 1/(s+3)}. Either side of '/' is a bare number or a
// bracketed ascending coefficient list; the "/den" part is optional.
std::pair<std::string, RationalFn> parse_symbol_assignment(std::string_view text);

}  // namespace sfg
