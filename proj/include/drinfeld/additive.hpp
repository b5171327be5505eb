#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

/**
 * AdditivePoly<R> - an F_q-linear polynomial  sum_i a_i X^{q^i}  with
 * coefficients in a ring R that supports the q-power Frobenius.
 *
 * The coefficient ring is abstract: the same engine runs over truncated
 * series (numeric lattice computations) and over the symbolic coefficient
 * ring (generic rank computations).  R must provide, as free functions found
 * by ADL:
 *
 *   ring_is_zero(x)            zero test (at precision, where applicable)
 *   ring_zero_like(x)          additive identity with x's context
 *   frobenius_q_pow(x, n)      x^{q^n}
 *   ring_scale_base(x, c)      multiplication by c in F_q (raw index)
 *   operators + * and unary -
 *
 * Composition is the twisted multiplication (f o g)_{i+j} += f_i * g_j^{q^i};
 * it realizes the ring homomorphism a -> phi_a on Drinfeld modules.
 */
template <typename R>
class AdditivePoly {
public:
    AdditivePoly() = default;  // zero
    explicit AdditivePoly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

    static AdditivePoly identity(const R& one) { return AdditivePoly({one}); }

    bool is_zero() const { return c_.empty(); }
    // tau-degree; -1 for zero
    int tau_degree() const { return (int)c_.size() - 1; }
    const std::vector<R>& coeffs() const { return c_; }
    const R& coeff(size_t i) const { return c_[i]; }
    bool has_coeff(size_t i) const { return i < c_.size() && !ring_is_zero(c_[i]); }

    const R& leading() const {
        if (c_.empty()) throw ArithmeticError("AdditivePoly: leading of zero");
        return c_.back();
    }

    AdditivePoly operator+(const AdditivePoly& o) const {
        std::vector<R> r;
        size_t n = std::max(c_.size(), o.c_.size());
        r.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            if (i < c_.size() && i < o.c_.size()) r.push_back(c_[i] + o.c_[i]);
            else if (i < c_.size()) r.push_back(c_[i]);
            else r.push_back(o.c_[i]);
        }
        return AdditivePoly(std::move(r));
    }

    AdditivePoly scaled_base(uint32_t c) const {
        std::vector<R> r;
        r.reserve(c_.size());
        for (const R& x : c_) r.push_back(ring_scale_base(x, c));
        return AdditivePoly(std::move(r));
    }

private:
    std::vector<R> c_;
    void trim() {
        while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
    }
};

// f o g; tau-degrees add.
template <typename R>
AdditivePoly<R> ap_compose(const AdditivePoly<R>& f, const AdditivePoly<R>& g) {
    if (f.is_zero() || g.is_zero()) return AdditivePoly<R>();
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    // every slot k receives at least one (i, j) contribution, so accumulate
    // lazily instead of seeding with zeros of some borrowed precision
    std::vector<std::optional<R>> acc(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
            R term = a[i] * frobenius_q_pow(b[j], (uint32_t)i);
            auto& slot = acc[i + j];
            if (slot) slot = *slot + term;
            else slot = std::move(term);
        }
    }
    std::vector<R> r;
    r.reserve(acc.size());
    for (auto& s : acc) r.push_back(std::move(*s));
    return AdditivePoly<R>(std::move(r));
}

// sum a_i x^{q^i}, by iterated Frobenius on x
template <typename R>
R ap_eval(const AdditivePoly<R>& f, const R& x) {
    if (f.is_zero()) return ring_zero_like(x);
    const auto& a = f.coeffs();
    R y = x;
    R acc = a[0] * y;
    for (size_t i = 1; i < a.size(); ++i) {
        y = frobenius_q_pow(y, 1);
        acc = acc + a[i] * y;
    }
    return acc;
}

template <typename R>
const R& ap_leading(const AdditivePoly<R>& f) {
    return f.leading();
}

} // namespace drinfeld
