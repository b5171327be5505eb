#include "drinfeld/fq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <memory>

namespace drinfeld {

namespace {

constexpr uint32_t kMaxFieldSize = 1u << 20;

// Dense polynomial arithmetic over F_p, used only while building tables.
using PPoly = std::vector<uint32_t>;

void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& mod, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (uint64_t)a[i] * b[j]) % p;
    }
    // mod is monic
    size_t d = mod.size() - 1;
    for (size_t i = r.size(); i-- > d;) {
        uint32_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (size_t j = 0; j < d; ++j)
            r[i - d + j] = (r[i - d + j] + (uint64_t)c * (p - mod[j]) % p) % p;
    }
    r.resize(d);
    ptrim(r);
    return r;
}

PPoly ppowmod(PPoly base, uint64_t n, const PPoly& mod, uint32_t p) {
    PPoly r{1};
    while (n) {
        if (n & 1) r = pmulmod(r, base, mod, p);
        base = pmulmod(base, base, mod, p);
        n >>= 1;
    }
    return r;
}

PPoly pgcd(PPoly a, PPoly b, uint32_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // a mod b, b monic not required: scale as we go
        PPoly r = a;
        uint32_t lb = b.back();
        // invert lb mod p
        uint32_t lbinv = 1;
        for (uint32_t x = 1; x < p; ++x)
            if ((uint64_t)lb * x % p == 1) { lbinv = x; break; }
        while (r.size() >= b.size()) {
            uint32_t c = (uint64_t)r.back() * lbinv % p;
            size_t off = r.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                r[off + j] = (r[off + j] + (uint64_t)c * (p - b[j]) % p) % p;
            ptrim(r);
            if (r.empty()) break;
        }
        a = b;
        b = r;
    }
    return a;
}

std::vector<uint32_t> prime_factors(uint64_t n) {
    std::vector<uint32_t> fs;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back((uint32_t)d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back((uint32_t)n);
    return fs;
}

bool is_irreducible(const PPoly& f, uint32_t p) {
    uint32_t e = (uint32_t)f.size() - 1;
    PPoly x{0, 1};
    // x^{p^e} == x mod f
    PPoly xq = x;
    for (uint32_t i = 0; i < e; ++i) xq = ppowmod(xq, p, f, p);
    PPoly diff = xq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    ptrim(diff);
    if (!diff.empty()) return false;
    // gcd(x^{p^{e/l}} - x, f) == 1 for each prime l | e
    for (uint32_t l : prime_factors(e)) {
        PPoly xr = x;
        for (uint32_t i = 0; i < e / l; ++i) xr = ppowmod(xr, p, f, p);
        PPoly d = xr;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = (d[1] + p - 1) % p;
        ptrim(d);
        PPoly g = pgcd(f, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace

bool factor_prime_power(uint32_t q, uint32_t& p, uint32_t& e) {
    if (q < 2) return false;
    uint32_t n = q;
    uint32_t d = 2;
    while (d * d <= n && n % d != 0) ++d;
    p = (d * d <= n) ? d : n;
    e = 0;
    while (n % p == 0) { n /= p; ++e; }
    return n == 1;
}

FqField::FqField(uint32_t p, uint32_t e) : p_(p), e_(e) {
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxFieldSize)
            throw ArithmeticError("FqField: field size exceeds supported cap");
    }
    q_ = (uint32_t)q;

    if (e_ == 1) {
        modulus_ = {0, 1};
    } else {
        // First monic irreducible of degree e, ordering candidates by the
        // base-p integer encoding of their lower coefficients.
        for (uint64_t idx = 0;; ++idx) {
            PPoly f(e_ + 1, 0);
            f[e_] = 1;
            uint64_t t = idx;
            for (uint32_t i = 0; i < e_; ++i) { f[i] = t % p_; t /= p_; }
            if (t != 0)
                throw ArithmeticError("FqField: no irreducible found");  // unreachable
            if (is_irreducible(f, p_)) { modulus_ = f; break; }
        }
    }

    // raw multiplication via polynomial representation, for table building
    auto to_poly = [&](uint32_t a) {
        PPoly r;
        while (a) { r.push_back(a % p_); a /= p_; }
        return r;
    };
    auto from_poly = [&](const PPoly& f) {
        uint32_t a = 0;
        for (size_t i = f.size(); i-- > 0;) a = a * p_ + f[i];
        return a;
    };
    auto raw_mul = [&](uint32_t a, uint32_t b) {
        return from_poly(pmulmod(to_poly(a), to_poly(b), modulus_, p_));
    };
    auto raw_pow = [&](uint32_t a, uint64_t n) {
        uint32_t r = 1;
        while (n) {
            if (n & 1) r = raw_mul(r, a);
            a = raw_mul(a, a);
            n >>= 1;
        }
        return r;
    };

    // multiplicative generator: first element (by index) of order q-1
    std::vector<uint32_t> fs = prime_factors(q_ - 1);
    for (uint32_t g = 2; g < q_; ++g) {
        bool ok = true;
        for (uint32_t l : fs)
            if (raw_pow(g, (q_ - 1) / l) == 1) { ok = false; break; }
        if (ok) { gen_ = g; break; }
    }
    if (gen_ == 0 && q_ > 2) throw ArithmeticError("FqField: no generator found");
    if (q_ == 2) gen_ = 1;

    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    uint32_t acc = 1;
    for (uint32_t i = 0; i + 1 < q_; ++i) {
        exp_[i] = acc;
        log_[acc] = i;
        acc = raw_mul(acc, gen_);
    }

    neg_.resize(q_);
    for (uint32_t a = 0; a < q_; ++a) {
        uint32_t r = 0, mulp = 1, t = a;
        for (uint32_t i = 0; i < e_; ++i) {
            uint32_t d = t % p_;
            t /= p_;
            r += ((p_ - d) % p_) * mulp;
            mulp *= p_;
        }
        neg_[a] = r;
    }

    frob_.resize(q_);
    for (uint32_t a = 0; a < q_; ++a) frob_[a] = raw_pow(a, p_);

    if (q_ <= 256) {
        addtab_.resize((size_t)q_ * q_);
        for (uint32_t a = 0; a < q_; ++a)
            for (uint32_t b = 0; b < q_; ++b) {
                uint32_t r = 0, mulp = 1, ta = a, tb = b;
                for (uint32_t i = 0; i < e_; ++i) {
                    r += ((ta % p_) + (tb % p_)) % p_ * mulp;
                    ta /= p_;
                    tb /= p_;
                    mulp *= p_;
                }
                addtab_[(size_t)a * q_ + b] = r;
            }
    }
}

uint32_t FqField::add(uint32_t a, uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (!addtab_.empty()) return addtab_[(size_t)a * q_ + b];
    uint32_t r = 0, mulp = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        r += ((a % p_) + (b % p_)) % p_ * mulp;
        a /= p_;
        b /= p_;
        mulp *= p_;
    }
    return r;
}

uint32_t FqField::pow(uint32_t a, int64_t n) const {
    if (a == 0) {
        if (n > 0) return 0;
        if (n == 0) return 1;
        throw ArithmeticError("FqField: negative power of zero");
    }
    int64_t m = (int64_t)(q_ - 1);
    int64_t ln = (int64_t)log_[a] % m * (n % m) % m;
    if (ln < 0) ln += m;
    return exp_[ln];
}

uint32_t FqField::frobenius_iter(uint32_t a, uint32_t n) const {
    if (a == 0) return 0;
    // x -> x^{p^n} multiplies the discrete log by p^n mod q-1
    uint64_t m = q_ - 1;
    uint64_t f = 1, base = p_ % m, k = n;
    while (k) {
        if (k & 1) f = f * base % m;
        base = base * base % m;
        k >>= 1;
    }
    return exp_[log_[a] * f % m];
}

namespace {
std::mutex g_field_mutex;
std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<FqField>>& field_registry() {
    static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<FqField>> reg;
    return reg;
}

struct EmbedKey {
    const FqField* from;
    const FqField* to;
    bool operator<(const EmbedKey& o) const {
        return std::tie(from, to) < std::tie(o.from, o.to);
    }
};
std::map<EmbedKey, std::vector<uint32_t>>& embed_registry() {
    static std::map<EmbedKey, std::vector<uint32_t>> reg;
    return reg;
}
} // namespace

const FqField& FqField::get_pe(uint32_t p, uint32_t e) {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto& reg = field_registry();
    auto it = reg.find({p, e});
    if (it == reg.end())
        it = reg.emplace(std::make_pair(p, e),
                         std::unique_ptr<FqField>(new FqField(p, e))).first;
    return *it->second;
}

const FqField& FqField::get(uint32_t q) {
    uint32_t p, e;
    if (!factor_prime_power(q, p, e))
        throw ArithmeticError("FqField: q is not a prime power");
    return get_pe(p, e);
}

uint32_t FqField::embed(uint32_t a, const FqField& big) const {
    if (&big == this) return a;
    if (big.p_ != p_ || big.e_ % e_ != 0)
        throw ArithmeticError("FqField: no embedding into target field");
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto& reg = embed_registry();
    auto it = reg.find({this, &big});
    if (it == reg.end()) {
        std::vector<uint32_t> table(q_);
        if (e_ == 1) {
            // prime field: c -> c * 1
            for (uint32_t c = 0; c < q_; ++c) table[c] = c;  // digit-0 encoding
        } else {
            // first root of our modulus in the big field's index order
            uint32_t root = 0;
            bool found = false;
            for (uint32_t x = 0; x < big.q_ && !found; ++x) {
                uint32_t acc = 0, xp = 1;
                for (size_t i = 0; i < modulus_.size(); ++i) {
                    acc = big.add(acc, big.mul(modulus_[i] % p_, xp));
                    xp = big.mul(xp, x);
                }
                if (acc == 0) { root = x; found = true; }
            }
            if (!found) throw ArithmeticError("FqField: embedding root not found");
            std::vector<uint32_t> rootpow(e_);
            rootpow[0] = 1;
            for (uint32_t i = 1; i < e_; ++i) rootpow[i] = big.mul(rootpow[i - 1], root);
            for (uint32_t aa = 0; aa < q_; ++aa) {
                uint32_t acc = 0, t = aa;
                for (uint32_t i = 0; i < e_; ++i) {
                    acc = big.add(acc, big.mul(t % p_, rootpow[i]));
                    t /= p_;
                }
                table[aa] = acc;
            }
        }
        it = reg.emplace(EmbedKey{this, &big}, std::move(table)).first;
    }
    return it->second[a];
}

} // namespace drinfeld
