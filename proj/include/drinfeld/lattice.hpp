#pragma once

#include <cstdint>
#include <vector>

#include "drinfeld/additive.hpp"
#include "drinfeld/apoly.hpp"
#include "drinfeld/series.hpp"

namespace drinfeld {

/**
 * LatticeSpec - the A-module generated by F_infty-independent elements
 * omega_1..omega_rho of C_infty, enumerated through coefficient degree B:
 * the finite set { a_1 omega_1 + ... + a_rho omega_rho : deg a_i <= B }.
 */
struct LatticeSpec {
    std::vector<RamifiedSeries> basis;
    int32_t B = 0;

    LatticeSpec(std::vector<RamifiedSeries> basis_, int32_t B_);
    uint32_t rank() const { return (uint32_t)basis.size(); }
    const SeriesDomain& domain() const { return basis[0].domain(); }
};

/**
 * Omega - a normalized period vector (omega_1, ..., omega_r), r >= 2, with
 * omega_r equal to the Carlitz period xi at working precision.
 *
 * Linear independence over F_infty is certified through a sufficient
 * condition: when the entry valuations are pairwise distinct modulo the
 * ramification index m, every nonzero F_infty-combination satisfies the
 * strict triangle equality, so no combination can vanish.  Entries failing
 * the condition are accepted but flagged unverified.
 */
class Omega {
public:
    Omega(std::vector<RamifiedSeries> entries, const RamifiedSeries& xi);

    const std::vector<RamifiedSeries>& entries() const { return e_; }
    const RamifiedSeries& entry(size_t i) const { return e_[i]; }
    uint32_t rank() const { return (uint32_t)e_.size(); }
    bool general_position_verified() const { return gp_; }
    const SeriesDomain& domain() const { return e_[0].domain(); }

    LatticeSpec lattice(int32_t B) const { return LatticeSpec(e_, B); }
    // A^{r-1} omega' with omega' = (omega_2, ..., omega_r)
    LatticeSpec tail_lattice(int32_t B) const {
        return LatticeSpec({e_.begin() + 1, e_.end()}, B);
    }

private:
    std::vector<RamifiedSeries> e_;
    bool gp_ = false;
};

/**
 * LatticeExp - the exponential of a degree-bounded lattice as an additive
 * polynomial.
 *
 * The enumerated point set L_B = { sum a_i omega_i : deg a_i <= B } is an
 * F_q-vector space with basis { t^j omega_i }, so the monic root polynomial
 * E_V(X) = prod_{v in V} (X - v) satisfies the subspace recursion
 *
 *     E_{V + F_q w}(X) = E_V(X)^q - E_V(w)^{q-1} E_V(X),
 *
 * which builds E over all of L_B in O(dim^2) ring operations instead of
 * q^dim product factors.  Normalizing the linear coefficient to 1 turns E
 * into the truncated exponential e(z) = z prod'(1 - z/lambda), with exactly
 * the same value as the literal product over the enumerated points.
 */
class LatticeExp {
public:
    explicit LatticeExp(const LatticeSpec& L);

    const AdditivePoly<RamifiedSeries>& poly() const { return e_; }
    const LatticeSpec& spec() const { return L_; }
    RamifiedSeries eval(const RamifiedSeries& z) const;

private:
    LatticeSpec L_;
    AdditivePoly<RamifiedSeries> e_;
};

// e_L(z) for the degree-B enumeration of L (convenience wrapper; builds the
// additive polynomial each call).
RamifiedSeries exp_eval(const LatticeSpec& L, const RamifiedSeries& z);

// Literal product z prod'(1 - z/lambda) over every enumerated nonzero
// lattice point, one factor at a time.  Exponential cost in B; exists as an
// independent oracle for LatticeExp.
RamifiedSeries exp_eval_enumerated(const LatticeSpec& L, const RamifiedSeries& z);

/**
 * phi_a of the Drinfeld module attached to L, built from its defining root
 * data: phi_a(Z) = a Z prod'(1 - Z / e_L(lambda)) over representatives
 * lambda = (b_1 omega_1 + ... + b_rho omega_rho)/a, deg b_i < deg a.
 *
 * The product is expanded as a dense polynomial and collapsed to an additive
 * polynomial; coefficients at non-q-power degrees must vanish at working
 * precision, otherwise a ConsistencyError reports that B or the precision is
 * too small.  tau-degree of the result: rank * deg a.
 */
AdditivePoly<RamifiedSeries> phi_from_lattice(const LatticeSpec& L, const APoly& a);

// u = 1 / e_{Lambda'}(omega_1), the expansion parameter at infinity.
RamifiedSeries u_param(const Omega& omega, int32_t B);

/** r x r matrix over A acting on period vectors. */
struct GammaMatrix {
    std::vector<std::vector<APoly>> a;

    uint32_t size() const { return (uint32_t)a.size(); }
    APoly det() const;
    bool det_in_fq_units() const;
    static GammaMatrix identity(const FqField& F, uint32_t r);
};

struct GammaAction {
    Omega omega;        // normalized gamma . omega (last entry xi)
    RamifiedSeries j;   // automorphy factor: xi^{-1} times last entry of [gamma][omega]
};

GammaAction gamma_act(const GammaMatrix& gamma, const Omega& omega,
                      const RamifiedSeries& xi);

/**
 * The discriminant by brute force:  Delta = t prod' e_L(omega alpha)^{-1}
 * over the q^rho - 1 nonzero t-torsion representatives alpha in
 * (t^{-1}A/A)^rho.  Cross-checked internally against the leading coefficient
 * of phi_from_lattice(L, t) - an independent formula for the same quantity
 * sharing only the lattice exponential.
 */
RamifiedSeries delta_direct(const LatticeSpec& L);

} // namespace drinfeld
