#pragma once

#include <string>

#include <json.hpp>

#include "drinfeld/expansion.hpp"
#include "drinfeld/verify.hpp"

namespace drinfeld {

using ordered_json = nlohmann::ordered_json;

// [c_0, c_1, ...] low degree first
ordered_json apoly_to_json(const APoly& a);

// {"m":..,"k":..,"v":..,"P":..,"coeffs":[...]}
ordered_json series_to_json(const RamifiedSeries& x);

// [{"g_exponents":[...],"delta_exponent":..,"scalar":[...]}, ...]
ordered_json symcoeff_to_json(const SymCoeff& x);

ordered_json expansion_to_json(const ExpansionResult& ex);
std::string expansion_to_text(const ExpansionResult& ex);

ordered_json report_to_json(const SuiteReport& rep);
std::string report_to_text(const SuiteReport& rep);

// write to the given path, or stdout when path is empty; always '\n'-terminated
void write_output(const std::string& path, const std::string& content);

} // namespace drinfeld
