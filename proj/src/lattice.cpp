#include "drinfeld/lattice.hpp"

#include <cmath>
#include <set>

namespace drinfeld {

namespace {
constexpr int64_t kExactPrec = (int64_t)1 << 40;
}

namespace {

// Size reduction over A: subtract c t^k multiples of one basis vector from
// another while their leading terms collide (same valuation class mod m and
// leading-coefficient ratio in F_q).  Unimodular, so the A-span is unchanged;
// it removes the cancellations that would otherwise destroy tracked precision
// in the subspace recursion (e.g. after a unitriangular gamma-action the raw
// basis has colliding valuations).
void size_reduce(std::vector<RamifiedSeries>& basis) {
    if (basis.size() < 2) return;
    const SeriesDomain& dom = basis[0].domain();
    const FqField& Fq = FqField::get(dom.base_q);
    // embedding of F_q^x into the coefficient field, inverted
    std::vector<uint32_t> base_of(dom.F->q(), 0);
    for (uint32_t c = 1; c < dom.base_q; ++c) base_of[Fq.embed(c, *dom.F)] = c;

    for (int guard = 0;; ++guard) {
        if (guard > 16 * dom.cap)
            throw PrecisionError("LatticeSpec: basis reduction did not terminate");
        bool changed = false;
        for (size_t i = 0; i < basis.size() && !changed; ++i) {
            for (size_t j = 0; j < basis.size() && !changed; ++j) {
                if (i == j) continue;
                if (basis[i].is_zero_at_prec())
                    throw PrecisionError(
                        "LatticeSpec: basis degenerate at working precision");
                SExp vi = basis[i].val_lb(), vj = basis[j].val_lb();
                if (vi > vj || (vj - vi) % dom.m != 0) continue;
                uint32_t ratio =
                    dom.F->div(basis[i].leading_coeff(), basis[j].leading_coeff());
                uint32_t c = base_of[ratio];
                if (c == 0) continue;  // not an F_q-collision
                basis[i] = basis[i] - basis[j].scaled_base(c).shifted(vi - vj);
                changed = true;
            }
        }
        if (!changed) break;
    }
}

} // namespace

LatticeSpec::LatticeSpec(std::vector<RamifiedSeries> basis_, int32_t B_)
    : basis(std::move(basis_)), B(B_) {
    if (basis.empty()) throw ArithmeticError("LatticeSpec: empty basis");
    if (B < 0) throw ArithmeticError("LatticeSpec: negative degree bound");
    SeriesDomain dom = basis[0].domain();
    for (size_t i = 1; i < basis.size(); ++i)
        if (basis[i].domain() != dom) {
            // bring everything into a common refinement
            for (const auto& b : basis) dom = common_domain(dom, b.domain());
            for (auto& b : basis) b = b.in_domain(dom);
            break;
        }
    for (const auto& b : basis)
        if (b.is_zero_at_prec())
            throw ArithmeticError("LatticeSpec: basis entry is zero at precision");
    size_reduce(basis);
}

Omega::Omega(std::vector<RamifiedSeries> entries, const RamifiedSeries& xi)
    : e_(std::move(entries)) {
    if (e_.size() < 2) throw ArithmeticError("Omega: rank must be >= 2");
    for (const auto& w : e_)
        if (w.is_zero_at_prec())
            throw ArithmeticError("Omega: entry is zero at precision");
    if (!agrees_at_precision(e_.back(), xi.in_domain(e_.back().domain())))
        throw ArithmeticError("Omega: last entry must equal xi");
    // sufficient condition for general position: valuations pairwise
    // distinct mod m
    int64_t m = e_[0].domain().m;
    std::set<int64_t> residues;
    gp_ = true;
    for (const auto& w : e_) {
        int64_t res = ((w.val_lb() % m) + m) % m;
        if (!residues.insert(res).second) { gp_ = false; break; }
    }
}

LatticeExp::LatticeExp(const LatticeSpec& L) : L_(L) {
    const SeriesDomain& dom = L_.domain();
    uint32_t q = dom.base_q;

    // valuations inside the recursion reach about q^dim; keep them inside
    // the 128-bit exponent range
    double dim = (double)L_.basis.size() * (L_.B + 1);
    if (dim * std::log2((double)q) > 108.0)
        throw ArithmeticError("LatticeExp: enumeration bound too large for the "
                              "exponent range (reduce B)");

    // basis of the F_q-space L_B: t^j omega_i, degree-major
    std::vector<RamifiedSeries> vecs;
    vecs.reserve((size_t)(L_.B + 1) * L_.basis.size());
    for (int32_t j = 0; j <= L_.B; ++j)
        for (const auto& w : L_.basis)
            vecs.push_back(w.shifted(-(int64_t)j * dom.m));  // t^j w

    // E_V coefficients (E(X) = X at V = {0}) and the values E_V(w) of the
    // not-yet-absorbed basis vectors
    std::vector<RamifiedSeries> E{RamifiedSeries::one(dom)};
    std::vector<RamifiedSeries> vals = vecs;

    for (size_t step = 0; step < vecs.size(); ++step) {
        const RamifiedSeries& theta = vals[step];
        if (theta.is_zero_at_prec())
            throw PrecisionError(
                "LatticeExp: basis value vanishes at precision (dependent basis "
                "or exhausted precision)");
        RamifiedSeries tq = theta.pow((int64_t)q - 1);
        // E'(X) = E(X)^q - theta^{q-1} E(X)
        std::vector<RamifiedSeries> En;
        En.reserve(E.size() + 1);
        En.push_back(-(tq * E[0]));
        for (size_t i = 1; i <= E.size(); ++i) {
            RamifiedSeries hi = E[i - 1].frobenius_q_pow(1);
            if (i < E.size()) hi = hi - tq * E[i];
            En.push_back(std::move(hi));
        }
        E = std::move(En);
        for (size_t u = step + 1; u < vals.size(); ++u)
            vals[u] = vals[u].frobenius_q_pow(1) - tq * vals[u];
    }

    // normalize the linear coefficient to 1: e(z) = E(z) / E'(0)
    RamifiedSeries inv0 = E[0].inv();
    std::vector<RamifiedSeries> coeffs;
    coeffs.reserve(E.size());
    for (const auto& c : E) coeffs.push_back(c * inv0);
    e_ = AdditivePoly<RamifiedSeries>(std::move(coeffs));
}

RamifiedSeries LatticeExp::eval(const RamifiedSeries& z) const {
    return ap_eval(e_, z.in_domain(L_.domain()));
}

RamifiedSeries exp_eval(const LatticeSpec& L, const RamifiedSeries& z) {
    return LatticeExp(L).eval(z);
}

RamifiedSeries exp_eval_enumerated(const LatticeSpec& L, const RamifiedSeries& z) {
    const SeriesDomain& dom = L.domain();
    uint32_t q = dom.base_q;
    const FqField& Fq = FqField::get(q);
    uint64_t per = 1;
    for (int32_t j = 0; j <= L.B; ++j) {
        per *= q;
        if (per > (1u << 22))
            throw ArithmeticError("exp_eval_enumerated: enumeration too large");
    }
    uint64_t total = 1;
    for (size_t i = 0; i < L.basis.size(); ++i) {
        total *= per;
        if (total > (1u << 22))
            throw ArithmeticError("exp_eval_enumerated: enumeration too large");
    }
    RamifiedSeries zz = z.in_domain(dom);
    RamifiedSeries acc = zz;
    for (uint64_t idx = 1; idx < total; ++idx) {
        uint64_t rest = idx;
        RamifiedSeries lambda = RamifiedSeries::zero(dom, kExactPrec);
        for (size_t i = 0; i < L.basis.size(); ++i) {
            uint64_t ci = rest % per;
            rest /= per;
            if (ci == 0) continue;
            APoly aci = APoly::from_index(Fq, ci);
            lambda = lambda + RamifiedSeries::from_apoly(dom, aci) * L.basis[i];
        }
        acc = acc * (RamifiedSeries::one(dom) - zz * lambda.inv());
    }
    return acc;
}

namespace {

// dense product a Z * prod (1 - Z / root) collapsed onto q-power exponents
AdditivePoly<RamifiedSeries> collapse_additive(
    const SeriesDomain& dom, const RamifiedSeries& a_series,
    const std::vector<RamifiedSeries>& roots, uint32_t q) {
    std::vector<RamifiedSeries> P;
    P.push_back(RamifiedSeries::zero(dom, kExactPrec));
    P.push_back(a_series);
    for (const auto& r : roots) {
        RamifiedSeries rinv = r.inv();
        std::vector<RamifiedSeries> Pn;
        Pn.reserve(P.size() + 1);
        for (size_t k = 0; k < P.size() + 1; ++k) {
            RamifiedSeries term = (k < P.size())
                                      ? P[k]
                                      : RamifiedSeries::zero(dom, kExactPrec);
            if (k > 0) term = term - P[k - 1] * rinv;
            Pn.push_back(std::move(term));
        }
        P = std::move(Pn);
    }
    // collect coefficients at exponents 1, q, q^2, ...; everything else must
    // be indistinguishable from zero
    std::vector<RamifiedSeries> add_coeffs;
    uint64_t qpow = 1;
    for (size_t k = 1; k < P.size(); ++k) {
        if (k == qpow) {
            add_coeffs.push_back(P[k]);
            qpow *= q;
        } else if (!P[k].is_zero_at_prec()) {
            throw ConsistencyError(
                "phi_from_lattice: non-additive expansion (raise B or precision)");
        }
    }
    if (!P[0].is_zero_at_prec())
        throw ConsistencyError("phi_from_lattice: nonzero constant term");
    return AdditivePoly<RamifiedSeries>(std::move(add_coeffs));
}

AdditivePoly<RamifiedSeries> phi_from_lattice_impl(const LatticeExp& E,
                                                   const APoly& a) {
    const LatticeSpec& L = E.spec();
    const SeriesDomain& dom = L.domain();
    uint32_t q = dom.base_q;
    const FqField& Fq = FqField::get(q);
    if (a.is_zero()) throw ArithmeticError("phi_from_lattice: a must be nonzero");
    int d = a.degree();
    if (d == 0) {
        // phi_c = c X
        return AdditivePoly<RamifiedSeries>(
            {RamifiedSeries::one(dom).scaled_base(a.coeff(0))});
    }

    // torsion representatives (b_1 omega_1 + ... + b_rho omega_rho) / a with
    // deg b_i < deg a; the representative choice does not affect e_L values
    uint64_t per = 1;
    for (int i = 0; i < d; ++i) per *= q;
    uint64_t total = 1;
    for (size_t i = 0; i < L.basis.size(); ++i) {
        total *= per;
        if (total > (1u << 16))
            throw ArithmeticError("phi_from_lattice: torsion set too large");
    }
    RamifiedSeries ainv = RamifiedSeries::from_apoly(dom, a).inv();
    std::vector<RamifiedSeries> basis_over_a;
    basis_over_a.reserve(L.basis.size());
    for (const auto& w : L.basis) basis_over_a.push_back(w * ainv);
    std::vector<RamifiedSeries> bser;
    bser.reserve(per);
    for (uint64_t i = 0; i < per; ++i)
        bser.push_back(RamifiedSeries::from_apoly(dom, APoly::from_index(Fq, i)));

    std::vector<RamifiedSeries> roots;
    roots.reserve(total - 1);
    for (uint64_t idx = 1; idx < total; ++idx) {
        uint64_t rest = idx;
        RamifiedSeries pt = RamifiedSeries::zero(dom, kExactPrec);
        for (size_t i = 0; i < basis_over_a.size(); ++i) {
            uint64_t ci = rest % per;
            rest /= per;
            if (ci == 0) continue;
            pt = pt + bser[ci] * basis_over_a[i];
        }
        roots.push_back(E.eval(pt));
    }

    AdditivePoly<RamifiedSeries> phi =
        collapse_additive(dom, RamifiedSeries::from_apoly(dom, a), roots, q);
    if (phi.tau_degree() != (int)L.basis.size() * d)
        throw ConsistencyError("phi_from_lattice: unexpected tau-degree");
    return phi;
}

} // namespace

AdditivePoly<RamifiedSeries> phi_from_lattice(const LatticeSpec& L, const APoly& a) {
    LatticeExp E(L);
    return phi_from_lattice_impl(E, a);
}

RamifiedSeries u_param(const Omega& omega, int32_t B) {
    LatticeExp E(omega.tail_lattice(B));
    RamifiedSeries v = E.eval(omega.entry(0));
    if (v.is_zero_at_prec())
        throw ArithmeticError("u_param: omega_1 lies in the enumerated sublattice");
    return v.inv();
}

APoly GammaMatrix::det() const {
    uint32_t n = size();
    for (const auto& row : a)
        if (row.size() != n) throw ArithmeticError("GammaMatrix: not square");
    const FqField& F = a[0][0].field();
    if (n == 1) return a[0][0];
    // Leibniz expansion with Lehmer-code parity; n <= 4 in practice
    struct Rec {
        const GammaMatrix& g;
        const FqField& F;
        APoly sum;
        std::vector<uint32_t> cols;
        std::vector<bool> used;
        Rec(const GammaMatrix& g_, const FqField& F_, uint32_t n)
            : g(g_), F(F_), sum(APoly::zero(F_)), used(n, false) {}
        void go(uint32_t row, APoly acc, bool odd) {
            uint32_t n = g.size();
            if (row == n) {
                sum = odd ? sum - acc : sum + acc;
                return;
            }
            for (uint32_t c = 0; c < n; ++c) {
                if (used[c] || g.a[row][c].is_zero()) continue;
                used[c] = true;
                uint32_t swaps = 0;
                for (uint32_t cc = 0; cc < c; ++cc)
                    if (!used[cc]) ++swaps;
                // parity increment = number of smaller unused columns skipped
                go(row + 1, acc * g.a[row][c], odd ^ (swaps % 2 == 1));
                used[c] = false;
            }
        }
    } rec(*this, F, n);
    rec.go(0, APoly::one(F), false);
    return rec.sum;
}

bool GammaMatrix::det_in_fq_units() const {
    APoly d = det();
    return d.degree() == 0 && !d.is_zero();
}

GammaMatrix GammaMatrix::identity(const FqField& F, uint32_t r) {
    GammaMatrix g;
    g.a.assign(r, std::vector<APoly>(r, APoly::zero(F)));
    for (uint32_t i = 0; i < r; ++i) g.a[i][i] = APoly::one(F);
    return g;
}

GammaAction gamma_act(const GammaMatrix& gamma, const Omega& omega,
                      const RamifiedSeries& xi) {
    uint32_t r = omega.rank();
    if (gamma.size() != r) throw ArithmeticError("gamma_act: size mismatch");
    if (gamma.det().is_zero()) throw ArithmeticError("gamma_act: singular matrix");
    const SeriesDomain& dom = omega.domain();

    std::vector<RamifiedSeries> prod;
    prod.reserve(r);
    for (uint32_t i = 0; i < r; ++i) {
        RamifiedSeries acc = RamifiedSeries::zero(dom, kExactPrec);
        for (uint32_t jj = 0; jj < r; ++jj) {
            if (gamma.a[i][jj].is_zero()) continue;
            acc = acc + RamifiedSeries::from_apoly(dom, gamma.a[i][jj]) *
                            omega.entry(jj);
        }
        prod.push_back(std::move(acc));
    }
    if (prod.back().is_zero_at_prec())
        throw ArithmeticError("gamma_act: degenerate action (last entry vanishes)");

    RamifiedSeries xid = xi.in_domain(dom);
    RamifiedSeries j = xid.inv() * prod.back();
    RamifiedSeries jinv = j.inv();
    std::vector<RamifiedSeries> entries;
    entries.reserve(r);
    for (uint32_t i = 0; i + 1 < r; ++i) entries.push_back(prod[i] * jinv);
    entries.push_back(xid);  // last entry is xi by construction of j
    return GammaAction{Omega(std::move(entries), xid), j};
}

RamifiedSeries delta_direct(const LatticeSpec& L) {
    const SeriesDomain& dom = L.domain();
    uint32_t q = dom.base_q;
    const FqField& Fq = FqField::get(q);
    LatticeExp E(L);

    // Delta = t prod' e(omega alpha)^{-1}, alpha over (t^{-1}A/A)^rho \ {0}
    uint64_t total = 1;
    for (size_t i = 0; i < L.basis.size(); ++i) total *= q;
    RamifiedSeries acc = RamifiedSeries::from_apoly(dom, APoly::t(Fq));
    for (uint64_t idx = 1; idx < total; ++idx) {
        uint64_t rest = idx;
        RamifiedSeries pt = RamifiedSeries::zero(dom, kExactPrec);
        for (size_t i = 0; i < L.basis.size(); ++i) {
            uint32_t ci = (uint32_t)(rest % q);
            rest /= q;
            if (ci == 0) continue;
            // (c_i / t) omega_i ; division by t is the exact shift by +m
            pt = pt + L.basis[i].scaled_base(ci).shifted(dom.m);
        }
        acc = acc * E.eval(pt).inv();
    }

    // independent formula for the same value: leading coefficient of phi_t
    AdditivePoly<RamifiedSeries> phi_t = phi_from_lattice_impl(E, APoly::t(Fq));
    if (!agrees_at_precision(acc, ap_leading(phi_t)))
        throw ConsistencyError(
            "delta_direct: torsion product and phi_t leading coefficient disagree");
    return acc;
}

} // namespace drinfeld
