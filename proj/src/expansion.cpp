#include "drinfeld/expansion.hpp"

namespace drinfeld {

std::string to_string(ExpansionMode m) {
    return m == ExpansionMode::kMonic ? "monic" : "full";
}

bool ExpansionResult::same_series(const ExpansionResult& o) const {
    if (q != o.q || r != o.r || N != o.N || prefactor_shift != o.prefactor_shift)
        return false;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != o.coeffs[i]) return false;
    return true;
}

int64_t degree_bound(int64_t N, uint32_t q, uint32_t r) {
    if (N < 1) throw ArithmeticError("degree_bound: N must be >= 1");
    for (int64_t D = 0;; ++D) {
        // least exponent of f_a at deg a = D+1: q^{(r-1)(D+1)} - q^{(r-1)(D+1)-1}
        int64_t e = (int64_t)(r - 1) * (D + 1);
        int64_t low = 1;
        bool huge = false;
        for (int64_t i = 0; i < e - 1; ++i) {
            low *= q;
            if (low >= N) { huge = true; break; }  // already q^{e-1} >= N
        }
        if (huge || low * ((int64_t)q - 1) >= N) return D;
    }
}

ExpansionResult delta_expansion(uint32_t q, uint32_t r, int64_t N,
                                ExpansionMode mode, int64_t D_override,
                                PowStrategy strategy, bool validate_factors) {
    uint32_t p, e;
    if (!factor_prime_power(q, p, e))
        throw ArithmeticError("delta_expansion: q is not a prime power");
    if (r < 2) throw ArithmeticError("delta_expansion: rank must be >= 2");
    if (N < 1) throw ArithmeticError("delta_expansion: N must be >= 1");

    const FqField& F = FqField::get(q);
    uint64_t qr = 1;
    for (uint32_t i = 0; i < r; ++i) {
        qr *= q;
        if (qr > ((uint64_t)1 << 40))
            throw ArithmeticError("delta_expansion: q^r out of supported range");
    }
    uint64_t exponent = qr - 1;
    if (mode == ExpansionMode::kMonic) exponent *= (q - 1);

    ExpansionResult out;
    out.q = q;
    out.r = r;
    out.N = N;
    out.mode = mode;
    out.D = D_override >= 0 ? D_override : degree_bound(N, q, r);
    out.prefactor_shift = (int64_t)q - 1;

    SymCoeff zero = SymCoeff::zero(F, r);
    USeries<SymCoeff> acc = USeries<SymCoeff>::one(N, zero);

    for (int64_t d = 1; d <= out.D; ++d) {
        for (const APoly& monic : monic_of_degree(F, (int)d)) {
            if (mode == ExpansionMode::kMonic) {
                FaPoly fa = f_a_build(monic, r, validate_factors);
                USeries<SymCoeff> factor = USeries<SymCoeff>::one(N, zero);
                bool nontrivial = false;
                for (const auto& [exp, c] : fa.terms)
                    if (exp < N) { factor.set((size_t)exp, c); nontrivial = true; }
                ++out.factor_count;
                if (!nontrivial) continue;
                USeries<SymCoeff> powed = strategy == PowStrategy::kCharP
                                              ? charp_pow(factor, exponent, p)
                                              : naive_pow(factor, exponent);
                acc = acc * powed;
            } else {
                // every nonzero a = c * monic once; each factor built
                // independently (the c-independence of f_a is thereby
                // exercised rather than assumed)
                for (uint32_t c = 1; c < q; ++c) {
                    APoly a = monic.scaled(c);
                    FaPoly fa = f_a_build(a, r, validate_factors);
                    USeries<SymCoeff> factor = USeries<SymCoeff>::one(N, zero);
                    bool nontrivial = false;
                    for (const auto& [exp, cf] : fa.terms)
                        if (exp < N) { factor.set((size_t)exp, cf); nontrivial = true; }
                    ++out.factor_count;
                    if (!nontrivial) continue;
                    USeries<SymCoeff> powed = strategy == PowStrategy::kCharP
                                                  ? charp_pow(factor, exponent, p)
                                                  : naive_pow(factor, exponent);
                    acc = acc * powed;
                }
            }
        }
    }
    // deg-0 factors are exactly 1 (f_a = 0 when deg a = 0); in full mode they
    // still count as enumerated factors
    if (mode == ExpansionMode::kFull) out.factor_count += q - 1;

    SymCoeff prefactor = -SymCoeff::delta_power(F, r, (int64_t)q);
    out.coeffs.reserve((size_t)N);
    for (int64_t i = 0; i < N; ++i)
        out.coeffs.push_back(prefactor * acc[(size_t)i]);

    if (!(out.coeffs[0] == prefactor))
        throw ConsistencyError("delta_expansion: leading coefficient is not -D^q");
    for (const auto& c : out.coeffs)
        out.min_delta_exp = std::min(out.min_delta_exp, c.min_delta_exp());
    if (r == 2) {
        for (const auto& c : out.coeffs)
            if (c.min_delta_exp() != 0)
                throw ConsistencyError("delta_expansion: rank-2 coefficient not in A");
    }
    return out;
}

RamifiedSeries evaluate_expansion(const ExpansionResult& ex, const SpecValues& vals,
                                  const RamifiedSeries& u) {
    // Horner from the top coefficient down, then the explicit u^{q-1} shift
    RamifiedSeries acc = specialize(ex.coeffs.back(), vals);
    for (size_t i = ex.coeffs.size() - 1; i-- > 0;)
        acc = acc * u + specialize(ex.coeffs[i], vals);
    return acc * u.pow(ex.prefactor_shift);
}

} // namespace drinfeld
