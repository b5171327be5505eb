#pragma once

#include <cstdint>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

/**
 * FqField - arithmetic tables for a finite field F_q, q = p^e.
 *
 * Elements are indices 0..q-1.  The index encodes the coordinate vector of
 * the element over F_p in base p (digit i = coefficient of x^i), where x is
 * the class of the generator modulo a fixed irreducible polynomial.  The
 * irreducible modulus is chosen deterministically per (p, e): the first monic
 * irreducible of degree e in the index order of its lower coefficients, so
 * the same (p, e) always yields the same field tables and the same element
 * encoding.
 *
 * Fields are interned: FqField::get(q) returns a reference that stays valid
 * for the lifetime of the process.  Instances are immutable after
 * construction and safe to share between threads.
 *
 * Multiplication and inversion run on discrete log tables; the table size
 * caps q at 2^20 internally (the public cap for base fields is q <= 2^16).
 */
class FqField {
public:
    static const FqField& get(uint32_t q);
    static const FqField& get_pe(uint32_t p, uint32_t e);

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint32_t q() const { return q_; }

    // Modulus polynomial coefficients over F_p, low degree first, length e+1,
    // leading coefficient 1.  For e = 1 this is {0, 1}, i.e. f(x) = x.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg_[b]); }
    uint32_t neg(uint32_t a) const { return neg_[a]; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    uint32_t inv(uint32_t a) const {
        if (a == 0) throw ArithmeticError("FqField: inversion of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
    uint32_t pow(uint32_t a, int64_t n) const;

    // x -> x^p, the absolute Frobenius.
    uint32_t frobenius(uint32_t a) const { return frob_[a]; }
    // x -> x^{p^n}
    uint32_t frobenius_iter(uint32_t a, uint32_t n) const;

    // Index of the multiplicative generator behind the log tables.
    uint32_t generator() const { return gen_; }

    // Image of element `a` of this field inside `big` (requires e | big.e and
    // same p).  The embedding sends the generator to the first root of this
    // field's modulus in `big`'s index order; tables are computed once and
    // cached.
    uint32_t embed(uint32_t a, const FqField& big) const;

    FqField(const FqField&) = delete;
    FqField& operator=(const FqField&) = delete;

private:
    FqField(uint32_t p, uint32_t e);

    uint32_t p_, e_, q_;
    std::vector<uint32_t> modulus_;
    uint32_t gen_ = 0;
    std::vector<uint32_t> exp_;   // size q-1, exp_[i] = g^i
    std::vector<uint32_t> log_;   // size q, log_[exp_[i]] = i
    std::vector<uint32_t> neg_;   // size q
    std::vector<uint32_t> frob_;  // size q
    std::vector<uint32_t> addtab_;  // q*q when q <= 256, else empty
};

/**
 * FqElem - a value of F_q together with its field, for convenience code and
 * tests.  Bulk containers (polynomials, series) store raw indices instead.
 */
class FqElem {
public:
    FqElem() : F_(nullptr), v_(0) {}
    FqElem(const FqField& F, uint32_t v) : F_(&F), v_(v) {
        if (v >= F.q()) throw ArithmeticError("FqElem: index out of range");
    }

    const FqField& field() const { return *F_; }
    uint32_t value() const { return v_; }

    FqElem operator+(FqElem o) const { return with(F_->add(v_, o.v_)); }
    FqElem operator-(FqElem o) const { return with(F_->sub(v_, o.v_)); }
    FqElem operator*(FqElem o) const { return with(F_->mul(v_, o.v_)); }
    FqElem operator/(FqElem o) const { return with(F_->div(v_, o.v_)); }
    FqElem operator-() const { return with(F_->neg(v_)); }
    FqElem inv() const { return with(F_->inv(v_)); }
    FqElem pow(int64_t n) const { return with(F_->pow(v_, n)); }
    FqElem frobenius() const { return with(F_->frobenius(v_)); }

    bool operator==(FqElem o) const { return F_ == o.F_ && v_ == o.v_; }
    bool operator!=(FqElem o) const { return !(*this == o); }

private:
    FqElem with(uint32_t v) const { FqElem r; r.F_ = F_; r.v_ = v; return r; }
    const FqField* F_;
    uint32_t v_;
};

// Decomposes q as p^e with p prime; returns false if q is not a prime power
// or q < 2.
bool factor_prime_power(uint32_t q, uint32_t& p, uint32_t& e);

} // namespace drinfeld
