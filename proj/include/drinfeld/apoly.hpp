#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/fq.hpp"

namespace drinfeld {

/**
 * APoly - element of A = F_q[t].
 *
 * Coefficients are stored low degree first as raw F_q indices, with no
 * trailing zeros (the zero polynomial has an empty coefficient vector).
 */
class APoly {
public:
    explicit APoly(const FqField& F) : F_(&F) {}
    APoly(const FqField& F, std::vector<uint32_t> coeffs);

    static APoly zero(const FqField& F) { return APoly(F); }
    static APoly one(const FqField& F) { return APoly(F, {1}); }
    static APoly t(const FqField& F) { return APoly(F, {0, 1}); }
    // c * t^n
    static APoly monomial(const FqField& F, uint32_t c, uint32_t n);
    // decode from base-q integer index, digit i = coefficient of t^i
    static APoly from_index(const FqField& F, uint64_t index);

    const FqField& field() const { return *F_; }
    const std::vector<uint32_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return (int)c_.size() - 1; }
    uint32_t coeff(uint32_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint32_t leading() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    APoly operator+(const APoly& o) const;
    APoly operator-(const APoly& o) const;
    APoly operator-() const;
    APoly operator*(const APoly& o) const;
    APoly scaled(uint32_t c) const;

    // (sum c_i t^i)^{p^n} = sum c_i^{p^n} t^{i p^n}; exact Frobenius power.
    APoly frobenius_pow(uint32_t n) const;

    bool operator==(const APoly& o) const { return F_ == o.F_ && c_ == o.c_; }
    bool operator!=(const APoly& o) const { return !(*this == o); }
    bool operator<(const APoly& o) const;  // degree-major, then index order

    std::string to_string(const std::string& var = "t") const;

private:
    const FqField* F_;
    std::vector<uint32_t> c_;
    void trim();
};

/**
 * Enumerates monic polynomials of degree <= d in a deterministic order:
 * degree-major, then by the base-q integer encoding of the lower
 * coefficients (digit i of the index = coefficient of t^i).
 */
class MonicRange {
public:
    MonicRange(const FqField& F, int max_degree)
        : F_(&F), dmax_(max_degree) {}

    class iterator {
    public:
        iterator(const FqField* F, int d, uint64_t idx, int dmax)
            : F_(F), d_(d), idx_(idx), dmax_(dmax) {}
        APoly operator*() const;
        iterator& operator++();
        bool operator!=(const iterator& o) const {
            return d_ != o.d_ || idx_ != o.idx_;
        }

    private:
        const FqField* F_;
        int d_;
        uint64_t idx_;
        int dmax_;
    };

    iterator begin() const { return iterator(F_, 0, 0, dmax_); }
    iterator end() const { return iterator(F_, dmax_ + 1, 0, dmax_); }

private:
    const FqField* F_;
    int dmax_;
};

// Monic polynomials of exactly the given degree, same coefficient order.
std::vector<APoly> monic_of_degree(const FqField& F, int d);

} // namespace drinfeld
