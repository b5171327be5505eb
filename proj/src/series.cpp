#include "drinfeld/series.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace drinfeld {

uint32_t SeriesDomain::e_base() const {
    uint32_t p, e;
    factor_prime_power(base_q, p, e);
    return e;
}

uint32_t SeriesDomain::k() const { return F->e() / e_base(); }

SeriesDomain make_domain(uint32_t q, uint32_t k, int32_t m, int32_t cap) {
    uint32_t p, e;
    if (!factor_prime_power(q, p, e))
        throw ArithmeticError("SeriesDomain: q is not a prime power");
    if (q > (1u << 16)) throw ArithmeticError("SeriesDomain: q exceeds cap 2^16");
    if (k < 1 || m < 1 || cap < 1)
        throw ArithmeticError("SeriesDomain: k, m, cap must be positive");
    SeriesDomain d;
    d.F = &FqField::get_pe(p, e * k);
    d.base_q = q;
    d.m = m;
    d.cap = cap;
    return d;
}

void RamifiedSeries::normalize() {
    size_t lz = 0;
    while (lz < c_.size() && c_[lz] == 0) ++lz;
    if (lz == c_.size()) {
        c_.clear();
        lead_ = aprec_;
        return;
    }
    if (lz) {
        c_.erase(c_.begin(), c_.begin() + lz);
        lead_ += (int64_t)lz;
    }
    if (aprec_ - lead_ > dom_.cap) {
        aprec_ = lead_ + dom_.cap;
        c_.resize((size_t)(aprec_ - lead_));
    }
    if ((SExp)c_.size() > aprec_ - lead_)
        c_.resize((size_t)(aprec_ - lead_));
}

RamifiedSeries RamifiedSeries::zero(const SeriesDomain& d, SExp aprec) {
    RamifiedSeries r;
    r.dom_ = d;
    r.lead_ = aprec;
    r.aprec_ = aprec;
    return r;
}

RamifiedSeries RamifiedSeries::monomial(const SeriesDomain& d, uint32_t c, SExp v) {
    if (c == 0) return zero(d, v + d.cap);
    RamifiedSeries r;
    r.dom_ = d;
    r.lead_ = v;
    r.aprec_ = v + d.cap;
    r.c_.assign((size_t)d.cap, 0);
    r.c_[0] = c;
    return r;
}

RamifiedSeries RamifiedSeries::from_digits(const SeriesDomain& d, SExp lead,
                                           std::vector<uint32_t> digits,
                                           SExp aprec) {
    RamifiedSeries r;
    r.dom_ = d;
    r.lead_ = lead;
    r.aprec_ = aprec;
    r.c_ = std::move(digits);
    if ((SExp)r.c_.size() > aprec - lead)
        throw ArithmeticError("RamifiedSeries: digit window exceeds precision");
    r.c_.resize((size_t)(aprec - lead), 0);
    r.normalize();
    return r;
}

RamifiedSeries RamifiedSeries::from_apoly(const SeriesDomain& d, const APoly& a) {
    if (a.field().q() != d.base_q)
        throw ArithmeticError("RamifiedSeries: polynomial field mismatch");
    if (a.is_zero()) return zero(d, d.cap);
    int deg = a.degree();
    // t^i contributes at exponent -m*i; leading term is t^deg
    SExp lead = -(SExp)d.m * deg;
    SExp aprec = lead + d.cap;
    std::vector<uint32_t> digits((size_t)d.cap, 0);
    const FqField& Fbase = a.field();
    for (int i = deg; i >= 0; --i) {
        SExp e = -(SExp)d.m * i;
        if (e >= aprec) break;
        if (a.coeff(i) == 0) continue;
        digits[(size_t)(e - lead)] = Fbase.embed(a.coeff(i), *d.F);
    }
    return from_digits(d, lead, std::move(digits), aprec);
}

RamifiedSeries RamifiedSeries::from_ratio(const SeriesDomain& d, const APoly& f,
                                          const APoly& g) {
    return from_apoly(d, f) * from_apoly(d, g).inv();
}

uint32_t RamifiedSeries::coeff_at(SExp exp) const {
    if (exp < lead_ || exp >= aprec_) return 0;
    size_t i = (size_t)(exp - lead_);
    return i < c_.size() ? c_[i] : 0;
}

uint32_t RamifiedSeries::leading_coeff() const {
    if (c_.empty())
        throw PrecisionError("RamifiedSeries: leading coefficient of zero-at-precision");
    return c_[0];
}

RamifiedSeries RamifiedSeries::operator+(const RamifiedSeries& o) const {
    if (dom_ != o.dom_) {
        SeriesDomain d = common_domain(dom_, o.dom_);
        return in_domain(d) + o.in_domain(d);
    }
    RamifiedSeries r;
    r.dom_ = dom_;
    r.aprec_ = std::min(aprec_, o.aprec_);
    r.lead_ = std::min(lead_, o.lead_);
    if (r.lead_ >= r.aprec_) return zero(dom_, r.aprec_);
    r.c_.assign((size_t)(r.aprec_ - r.lead_), 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        SExp e = lead_ + (SExp)i;
        if (e >= r.aprec_) break;
        r.c_[(size_t)(e - r.lead_)] = c_[i];
    }
    const FqField& F = *dom_.F;
    for (size_t i = 0; i < o.c_.size(); ++i) {
        SExp e = o.lead_ + (SExp)i;
        if (e >= r.aprec_) break;
        uint32_t& slot = r.c_[(size_t)(e - r.lead_)];
        slot = F.add(slot, o.c_[i]);
    }
    r.normalize();
    return r;
}

RamifiedSeries RamifiedSeries::operator-() const {
    RamifiedSeries r = *this;
    for (uint32_t& d : r.c_) d = dom_.F->neg(d);
    return r;
}

RamifiedSeries RamifiedSeries::operator-(const RamifiedSeries& o) const {
    return *this + (-o);
}

RamifiedSeries RamifiedSeries::operator*(const RamifiedSeries& o) const {
    if (dom_ != o.dom_) {
        SeriesDomain d = common_domain(dom_, o.dom_);
        return in_domain(d) * o.in_domain(d);
    }
    // val_lb is the valuation for canonical nonzero values and equals aprec
    // for zero-at-precision values, so the ultrametric rule below covers both.
    SExp aprec = std::min(aprec_ + o.lead_, o.aprec_ + lead_);
    if (c_.empty() || o.c_.empty()) return zero(dom_, aprec);
    RamifiedSeries r;
    r.dom_ = dom_;
    r.lead_ = lead_ + o.lead_;
    r.aprec_ = aprec;
    SExp n = aprec - r.lead_;
    if (n <= 0) return zero(dom_, aprec);
    r.c_.assign((size_t)n, 0);
    const FqField& F = *dom_.F;
    for (size_t i = 0; i < c_.size(); ++i) {
        uint32_t a = c_[i];
        if (a == 0) continue;
        if ((SExp)i >= n) break;
        size_t jmax = std::min(o.c_.size(), (size_t)(n - (SExp)i));
        for (size_t j = 0; j < jmax; ++j) {
            uint32_t b = o.c_[j];
            if (b == 0) continue;
            uint32_t& slot = r.c_[i + j];
            slot = F.add(slot, F.mul(a, b));
        }
    }
    r.normalize();
    return r;
}

RamifiedSeries RamifiedSeries::inv() const {
    if (c_.empty())
        throw PrecisionError("RamifiedSeries: inversion of zero-at-precision value");
    const FqField& F = *dom_.F;
    size_t n = c_.size();
    std::vector<uint32_t> w(n, 0);
    uint32_t u0 = F.inv(c_[0]);
    w[0] = u0;
    for (size_t i = 1; i < n; ++i) {
        uint32_t acc = 0;
        for (size_t j = 1; j <= i; ++j) {
            if (c_[j] == 0 || w[i - j] == 0) continue;
            acc = F.add(acc, F.mul(c_[j], w[i - j]));
        }
        w[i] = F.neg(F.mul(u0, acc));
    }
    RamifiedSeries r;
    r.dom_ = dom_;
    r.lead_ = -lead_;
    r.aprec_ = aprec_ - 2 * lead_;  // relative precision preserved
    r.c_ = std::move(w);
    r.normalize();
    return r;
}

RamifiedSeries RamifiedSeries::operator/(const RamifiedSeries& o) const {
    return *this * o.inv();
}

RamifiedSeries RamifiedSeries::frobenius_p() const {
    const FqField& F = *dom_.F;
    uint32_t p = F.p();
    RamifiedSeries r;
    r.dom_ = dom_;
    if (c_.empty()) return zero(dom_, aprec_ * (SExp)p);
    r.lead_ = lead_ * p;
    r.aprec_ = std::min(aprec_ * (SExp)p, r.lead_ + dom_.cap);
    SExp n = r.aprec_ - r.lead_;
    r.c_.assign((size_t)n, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        SExp e = (SExp)i * p;
        if (e >= n) break;
        r.c_[(size_t)e] = F.frobenius(c_[i]);
    }
    r.normalize();
    return r;
}

RamifiedSeries RamifiedSeries::frobenius_q_pow(uint32_t n) const {
    RamifiedSeries r = *this;
    uint32_t steps = n * dom_.e_base();
    for (uint32_t i = 0; i < steps; ++i) r = r.frobenius_p();
    return r;
}

RamifiedSeries RamifiedSeries::pow(int64_t n) const {
    if (n < 0) return inv().pow(-n);
    // base-p digits of n, exact Frobenius shortcut per digit block
    RamifiedSeries result = one(dom_);
    uint32_t p = dom_.F->p();
    RamifiedSeries y = *this;
    while (n) {
        uint32_t d = (uint32_t)(n % p);
        for (uint32_t i = 0; i < d; ++i) result = result * y;
        n /= p;
        if (n) y = y.frobenius_p();
    }
    return result;
}

RamifiedSeries RamifiedSeries::shifted(SExp d) const {
    RamifiedSeries r = *this;
    r.lead_ += d;
    r.aprec_ += d;
    return r;
}

RamifiedSeries RamifiedSeries::scaled(uint32_t c) const {
    if (c == 0) return zero(dom_, aprec_);
    RamifiedSeries r = *this;
    for (uint32_t& d : r.c_) d = dom_.F->mul(d, c);
    return r;
}

RamifiedSeries RamifiedSeries::scaled_base(uint32_t c) const {
    return scaled(FqField::get(dom_.base_q).embed(c, *dom_.F));
}

RamifiedSeries RamifiedSeries::truncated(SExp new_aprec) const {
    if (new_aprec >= aprec_) return *this;
    RamifiedSeries r = *this;
    r.aprec_ = new_aprec;
    if (r.lead_ > r.aprec_) r.lead_ = r.aprec_;
    if ((SExp)r.c_.size() > r.aprec_ - r.lead_)
        r.c_.resize((size_t)std::max<SExp>(0, r.aprec_ - r.lead_));
    r.normalize();
    return r;
}

RamifiedSeries RamifiedSeries::in_domain(const SeriesDomain& target) const {
    if (target == dom_) return *this;
    if (target.base_q != dom_.base_q)
        throw ArithmeticError("RamifiedSeries: base field mismatch");
    if (target.m % dom_.m != 0)
        throw ArithmeticError("RamifiedSeries: target ramification not a refinement");
    SExp K = target.m / dom_.m;
    RamifiedSeries r;
    r.dom_ = target;
    r.lead_ = lead_ * K;
    r.aprec_ = aprec_ * K;
    if (c_.empty()) {
        r.lead_ = r.aprec_;
        r.normalize();
        return r;
    }
    r.c_.assign((size_t)std::min<SExp>((SExp)c_.size() * K, r.aprec_ - r.lead_), 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        size_t e = i * (size_t)K;
        if (e >= r.c_.size()) break;
        r.c_[e] = dom_.F->embed(c_[i], *target.F);
    }
    r.normalize();
    return r;
}

SeriesDomain common_domain(const SeriesDomain& a, const SeriesDomain& b) {
    if (a.base_q != b.base_q)
        throw ArithmeticError("common_domain: base field mismatch");
    int64_t m = std::lcm((int64_t)a.m, (int64_t)b.m);
    uint32_t ebase = a.e_base();
    uint32_t elcm = std::lcm(a.F->e(), b.F->e());
    uint32_t k = elcm / ebase;
    // caps are relative digit counts; rescale to the refined ramification
    int64_t capa = (int64_t)a.cap * (m / a.m);
    int64_t capb = (int64_t)b.cap * (m / b.m);
    return make_domain(a.base_q, k, (int32_t)m, (int32_t)std::min(capa, capb));
}

SExp difference_valuation(const RamifiedSeries& x, const RamifiedSeries& y) {
    RamifiedSeries d = x - y;
    return d.val_lb();
}

bool agrees_at_precision(const RamifiedSeries& x, const RamifiedSeries& y) {
    return (x - y).is_zero_at_prec();
}

std::string sexp_to_string(SExp v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
    std::string s;
    while (u) {
        s.push_back((char)('0' + (int)(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

int64_t sexp_to_i64(SExp v) {
    if (v > (SExp)INT64_MAX || v < (SExp)INT64_MIN)
        throw ArithmeticError("sexp_to_i64: exponent out of 64-bit range");
    return (int64_t)v;
}

std::string RamifiedSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        SExp e = lead_ + (SExp)i;
        if (c_[i] != 1 || e == 0) os << c_[i];
        if (e != 0) {
            if (c_[i] != 1) os << "*";
            os << "s^" << sexp_to_string(e);
        }
    }
    if (first) os << "0";
    os << " + O(s^" << sexp_to_string(aprec_) << ")";
    return os.str();
}

} // namespace drinfeld
