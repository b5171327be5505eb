#include "drinfeld/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace drinfeld {

ordered_json apoly_to_json(const APoly& a) {
    ordered_json arr = ordered_json::array();
    for (uint32_t c : a.coeffs()) arr.push_back(c);
    return arr;
}

ordered_json series_to_json(const RamifiedSeries& x) {
    ordered_json j;
    j["m"] = x.domain().m;
    j["k"] = x.domain().k();
    j["v"] = sexp_to_i64(x.val_lb());
    j["P"] = sexp_to_i64(x.abs_prec());
    ordered_json arr = ordered_json::array();
    for (SExp e = x.val_lb(); e < x.abs_prec(); ++e) arr.push_back(x.coeff_at(e));
    j["coeffs"] = arr;
    return j;
}

ordered_json symcoeff_to_json(const SymCoeff& x) {
    ordered_json arr = ordered_json::array();
    for (const auto& [m, a] : x.terms()) {
        ordered_json term;
        ordered_json ge = ordered_json::array();
        for (int32_t e : m.g) ge.push_back(e);
        term["g_exponents"] = ge;
        term["delta_exponent"] = m.d;
        term["scalar"] = apoly_to_json(a);
        arr.push_back(term);
    }
    return arr;
}

ordered_json expansion_to_json(const ExpansionResult& ex) {
    ordered_json j;
    j["q"] = ex.q;
    j["r"] = ex.r;
    j["N"] = ex.N;
    j["mode"] = to_string(ex.mode);
    j["D"] = ex.D;
    j["prefactor_shift"] = ex.prefactor_shift;
    ordered_json coeffs = ordered_json::array();
    for (size_t i = 0; i < ex.coeffs.size(); ++i) {
        ordered_json entry;
        entry["n"] = ex.prefactor_shift + (int64_t)i;
        if (ex.r == 2) {
            // rank-2 coefficients are plain elements of A
            const auto& terms = ex.coeffs[i].terms();
            entry["value"] = terms.empty() ? ordered_json::array()
                                           : apoly_to_json(terms[0].second);
        } else {
            entry["value"] = symcoeff_to_json(ex.coeffs[i]);
        }
        coeffs.push_back(entry);
    }
    j["coefficients"] = coeffs;
    ordered_json meta;
    meta["factor_count"] = ex.factor_count;
    meta["min_delta_exponent"] = ex.min_delta_exp;
    j["meta"] = meta;
    return j;
}

std::string expansion_to_text(const ExpansionResult& ex) {
    std::ostringstream os;
    os << "# u-expansion of Delta, q=" << ex.q << " r=" << ex.r << " N=" << ex.N
       << " mode=" << to_string(ex.mode) << " D=" << ex.D << "\n";
    os << "# coefficient of u^n, n = " << ex.prefactor_shift << ".."
       << (ex.prefactor_shift + ex.N - 1) << "\n";
    for (size_t i = 0; i < ex.coeffs.size(); ++i) {
        if (ex.coeffs[i].is_zero()) continue;
        os << "u^" << (ex.prefactor_shift + (int64_t)i) << ": "
           << ex.coeffs[i].to_string() << "\n";
    }
    return os.str();
}

ordered_json report_to_json(const SuiteReport& rep) {
    // a plain list of cases; the overall outcome is the process exit code
    ordered_json arr = ordered_json::array();
    for (const auto& c : rep.cases) {
        ordered_json j;
        j["case"] = c.name;
        j["params"] = c.params;
        j["pass"] = c.pass;
        j["valuation_of_difference"] = c.difference_valuation;
        j["guaranteed_precision"] = c.guaranteed_precision;
        j["value_valuation"] = c.value_valuation;
        j["ram"] = c.ram;
        j["precision_exhausted"] = c.precision_exhausted;
        if (!c.note.empty()) j["note"] = c.note;
        arr.push_back(j);
    }
    return arr;
}

std::string report_to_text(const SuiteReport& rep) {
    std::ostringstream os;
    for (const auto& c : rep.cases) {
        os << (c.pass ? "PASS " : (c.precision_exhausted ? "PREC " : "FAIL "))
           << c.name << " [" << c.params << "]";
        if (c.guaranteed_precision != 0 || c.difference_valuation != 0)
            os << " diff_val=" << c.difference_valuation
               << " guaranteed=" << c.guaranteed_precision;
        if (!c.note.empty()) os << " (" << c.note << ")";
        os << "\n";
    }
    os << (rep.all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return os.str();
}

void write_output(const std::string& path, const std::string& content) {
    std::string body = content;
    if (body.empty() || body.back() != '\n') body += '\n';
    if (path.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << body;
    }
}

} // namespace drinfeld
