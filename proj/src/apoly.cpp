#include "drinfeld/apoly.hpp"

#include <sstream>

namespace drinfeld {

APoly::APoly(const FqField& F, std::vector<uint32_t> coeffs)
    : F_(&F), c_(std::move(coeffs)) {
    for (uint32_t v : c_)
        if (v >= F.q()) throw ArithmeticError("APoly: coefficient out of range");
    trim();
}

void APoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

APoly APoly::monomial(const FqField& F, uint32_t c, uint32_t n) {
    std::vector<uint32_t> v(n + 1, 0);
    v[n] = c;
    return APoly(F, std::move(v));
}

APoly APoly::from_index(const FqField& F, uint64_t index) {
    std::vector<uint32_t> v;
    while (index) {
        v.push_back((uint32_t)(index % F.q()));
        index /= F.q();
    }
    return APoly(F, std::move(v));
}

uint32_t APoly::leading() const {
    if (c_.empty()) throw ArithmeticError("APoly: leading coefficient of zero");
    return c_.back();
}

APoly APoly::operator+(const APoly& o) const {
    if (F_ != o.F_) throw ArithmeticError("APoly: field mismatch");
    APoly r(*F_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = F_->add(coeff((uint32_t)i), o.coeff((uint32_t)i));
    r.trim();
    return r;
}

APoly APoly::operator-() const {
    APoly r(*F_);
    r.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = F_->neg(c_[i]);
    return r;
}

APoly APoly::operator-(const APoly& o) const { return *this + (-o); }

APoly APoly::operator*(const APoly& o) const {
    if (F_ != o.F_) throw ArithmeticError("APoly: field mismatch");
    if (c_.empty() || o.c_.empty()) return APoly(*F_);
    APoly r(*F_);
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        uint32_t a = c_[i];
        if (a == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            uint32_t b = o.c_[j];
            if (b == 0) continue;
            r.c_[i + j] = F_->add(r.c_[i + j], F_->mul(a, b));
        }
    }
    r.trim();
    return r;
}

APoly APoly::scaled(uint32_t c) const {
    APoly r(*F_);
    if (c == 0) return r;
    r.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = F_->mul(c_[i], c);
    r.trim();
    return r;
}

APoly APoly::frobenius_pow(uint32_t n) const {
    if (n == 0 || c_.empty()) return *this;
    uint64_t pn = 1;
    for (uint32_t i = 0; i < n; ++i) {
        pn *= F_->p();
        if (pn > (1u << 30)) throw ArithmeticError("APoly: Frobenius power too large");
    }
    APoly r(*F_);
    r.c_.assign((c_.size() - 1) * pn + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        r.c_[i * pn] = F_->frobenius_iter(c_[i], n);
    return r;
}

bool APoly::operator<(const APoly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::string APoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i > 0) {
            if (c_[i] != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

APoly MonicRange::iterator::operator*() const {
    std::vector<uint32_t> v(d_ + 1, 0);
    v[d_] = 1;
    uint64_t t = idx_;
    for (int i = 0; i < d_; ++i) { v[i] = (uint32_t)(t % F_->q()); t /= F_->q(); }
    return APoly(*F_, std::move(v));
}

MonicRange::iterator& MonicRange::iterator::operator++() {
    ++idx_;
    uint64_t count = 1;
    for (int i = 0; i < d_; ++i) count *= F_->q();
    if (idx_ >= count) {
        ++d_;
        idx_ = 0;
    }
    return *this;
}

std::vector<APoly> monic_of_degree(const FqField& F, int d) {
    std::vector<APoly> out;
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= F.q();
    out.reserve(count);
    for (uint64_t idx = 0; idx < count; ++idx) {
        std::vector<uint32_t> v(d + 1, 0);
        v[d] = 1;
        uint64_t t = idx;
        for (int i = 0; i < d; ++i) { v[i] = (uint32_t)(t % F.q()); t /= F.q(); }
        out.emplace_back(F, std::move(v));
    }
    return out;
}

} // namespace drinfeld
