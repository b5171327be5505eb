#pragma once

#include <cstdint>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

/**
 * USeries<R> - power series in u over R, truncated at a fixed order N:
 * coefficients of u^0 .. u^{N-1} are stored densely, everything at
 * order >= N is discarded by all operations.
 *
 * R is any coefficient ring providing the ring_* hooks (see additive.hpp)
 * plus ring_frobenius_p and ring_inv.  In characteristic p the Frobenius
 * shortcut (sum f_n u^n)^p = sum f_n^p u^{np} is exact; charp_pow exploits
 * it digit by digit in base p.
 */
template <typename R>
class USeries {
public:
    USeries(int64_t order, const R& model)
        : order_(order), c_((size_t)order, ring_zero_like(model)) {
        if (order < 1) throw ArithmeticError("USeries: order must be >= 1");
    }

    static USeries one(int64_t order, const R& model) {
        USeries r(order, model);
        r.c_[0] = ring_one_like(model);
        return r;
    }

    int64_t order() const { return order_; }
    const R& operator[](size_t i) const { return c_[i]; }
    void set(size_t i, R v) {
        if ((int64_t)i < order_) c_[i] = std::move(v);
    }
    const std::vector<R>& coeffs() const { return c_; }

    bool operator==(const USeries& o) const {
        if (order_ != o.order_) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const USeries& o) const { return !(*this == o); }

    USeries operator+(const USeries& o) const {
        check(o);
        USeries r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
        return r;
    }

    USeries operator-(const USeries& o) const {
        check(o);
        USeries r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] + (-o.c_[i]);
        return r;
    }

    USeries operator*(const USeries& o) const {
        check(o);
        USeries r(order_, c_[0]);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (ring_is_zero(c_[i])) continue;
            size_t jmax = (size_t)order_ - i;
            for (size_t j = 0; j < jmax && j < o.c_.size(); ++j) {
                if (ring_is_zero(o.c_[j])) continue;
                r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
            }
        }
        return r;
    }

    // requires an invertible constant term
    USeries inv() const {
        R w0 = ring_inv(c_[0]);
        USeries r(order_, c_[0]);
        r.c_[0] = w0;
        for (size_t n = 1; n < c_.size(); ++n) {
            R acc = ring_zero_like(c_[0]);
            for (size_t j = 1; j <= n; ++j) {
                if (ring_is_zero(c_[j])) continue;
                acc = acc + c_[j] * r.c_[n - j];
            }
            r.c_[n] = -(w0 * acc);
        }
        return r;
    }

    // exact p-th power via the Frobenius shortcut
    USeries frobenius_p(uint32_t p) const {
        USeries r(order_, c_[0]);
        for (size_t i = 0; i * p < (size_t)order_; ++i) {
            if (ring_is_zero(c_[i])) continue;
            r.c_[i * p] = ring_frobenius_p(c_[i]);
        }
        return r;
    }

private:
    int64_t order_;
    std::vector<R> c_;

    void check(const USeries& o) const {
        if (order_ != o.order_) throw ArithmeticError("USeries: order mismatch");
    }
};

/**
 * x^E in characteristic p: write E in base p and combine Frobenius powers of
 * x with at most (p-1) multiplications per digit.  Agrees coefficient-for-
 * coefficient with naive square-and-multiply.
 */
template <typename R>
USeries<R> charp_pow(const USeries<R>& x, uint64_t E, uint32_t p) {
    USeries<R> result = USeries<R>::one(x.order(), x[0]);
    USeries<R> y = x;
    while (E) {
        uint32_t d = (uint32_t)(E % p);
        for (uint32_t i = 0; i < d; ++i) result = result * y;
        E /= p;
        if (E) y = y.frobenius_p(p);
    }
    return result;
}

// reference binary square-and-multiply, for cross-checks and benchmarks
template <typename R>
USeries<R> naive_pow(const USeries<R>& x, uint64_t E) {
    USeries<R> result = USeries<R>::one(x.order(), x[0]);
    USeries<R> y = x;
    while (E) {
        if (E & 1) result = result * y;
        E >>= 1;
        if (E) y = y * y;
    }
    return result;
}

} // namespace drinfeld
