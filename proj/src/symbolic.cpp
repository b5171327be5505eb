#include "drinfeld/symbolic.hpp"

#include <map>
#include <sstream>

#include "drinfeld/useries.hpp"

namespace drinfeld {

SymCoeff::SymCoeff(const FqField& F, uint32_t rank) : F_(&F), rank_(rank) {
    if (rank < 2) throw ArithmeticError("SymCoeff: rank must be >= 2");
}

SymMonomial SymCoeff::canon(SymMonomial m) const {
    m.g.resize(rank_ - 2, 0);
    if (rank_ == 2) m.d = 0;  // D = 1 for rank 2
    return m;
}

void SymCoeff::insert_term(SymMonomial m, APoly a) {
    if (a.is_zero()) return;
    t_.emplace_back(std::move(m), std::move(a));
}

SymCoeff SymCoeff::one(const FqField& F, uint32_t rank) {
    return from_scalar(F, rank, 1);
}

SymCoeff SymCoeff::from_scalar(const FqField& F, uint32_t rank, uint32_t c) {
    SymCoeff r(F, rank);
    if (c != 0) r.insert_term(r.canon({}), APoly(F, {c}));
    return r;
}

SymCoeff SymCoeff::from_apoly(const APoly& a, uint32_t rank) {
    SymCoeff r(a.field(), rank);
    if (!a.is_zero()) r.insert_term(r.canon({}), a);
    return r;
}

SymCoeff SymCoeff::g_var(const FqField& F, uint32_t rank, uint32_t i) {
    if (i < 1 || i > rank - 2) throw ArithmeticError("SymCoeff: g index out of range");
    SymCoeff r(F, rank);
    SymMonomial m = r.canon({});
    m.g[i - 1] = 1;
    r.insert_term(std::move(m), APoly::one(F));
    return r;
}

SymCoeff SymCoeff::delta_power(const FqField& F, uint32_t rank, int64_t e) {
    SymCoeff r(F, rank);
    SymMonomial m = r.canon({});
    if (rank > 2) m.d = e;
    r.insert_term(std::move(m), APoly::one(F));
    return r;
}

bool SymCoeff::is_one() const {
    return t_.size() == 1 && t_[0].first == canon({}) && t_[0].second.is_one();
}

SymCoeff SymCoeff::operator+(const SymCoeff& o) const {
    if (F_ != o.F_ || rank_ != o.rank_)
        throw ArithmeticError("SymCoeff: ring mismatch");
    SymCoeff r(*F_, rank_);
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
            r.t_.push_back(t_[i++]);
        } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
            r.t_.push_back(o.t_[j++]);
        } else {
            APoly s = t_[i].second + o.t_[j].second;
            if (!s.is_zero()) r.t_.emplace_back(t_[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return r;
}

SymCoeff SymCoeff::operator-() const {
    SymCoeff r = *this;
    for (auto& term : r.t_) term.second = -term.second;
    return r;
}

SymCoeff SymCoeff::operator-(const SymCoeff& o) const { return *this + (-o); }

SymCoeff SymCoeff::operator*(const SymCoeff& o) const {
    if (F_ != o.F_ || rank_ != o.rank_)
        throw ArithmeticError("SymCoeff: ring mismatch");
    SymCoeff r(*F_, rank_);
    if (t_.empty() || o.t_.empty()) return r;
    if (t_.size() == 1 && o.t_.size() == 1) {
        SymMonomial m = t_[0].first;
        for (size_t v = 0; v < m.g.size(); ++v) m.g[v] += o.t_[0].first.g[v];
        m.d += o.t_[0].first.d;
        r.insert_term(r.canon(std::move(m)), t_[0].second * o.t_[0].second);
        return r;
    }
    std::map<SymMonomial, APoly> acc;
    for (const auto& [ma, ca] : t_) {
        for (const auto& [mb, cb] : o.t_) {
            SymMonomial m = ma;
            for (size_t v = 0; v < m.g.size(); ++v) m.g[v] += mb.g[v];
            m.d += mb.d;
            APoly prod = ca * cb;
            auto it = acc.find(m);
            if (it == acc.end()) acc.emplace(std::move(m), std::move(prod));
            else it->second = it->second + prod;
        }
    }
    for (auto& [m, c] : acc)
        if (!c.is_zero()) r.t_.emplace_back(m, std::move(c));
    return r;
}

SymCoeff SymCoeff::scaled_base(uint32_t c) const {
    SymCoeff r(*F_, rank_);
    if (c == 0) return r;
    for (const auto& [m, a] : t_) r.t_.emplace_back(m, a.scaled(c));
    return r;
}

SymCoeff SymCoeff::inv() const {
    if (t_.size() != 1)
        throw ArithmeticError("SymCoeff: only single-term values are invertible");
    const auto& [m, a] = t_[0];
    for (int32_t e : m.g)
        if (e != 0)
            throw ArithmeticError("SymCoeff: positive g-exponents are not invertible");
    if (a.degree() != 0)
        throw ArithmeticError("SymCoeff: scalar is not a unit of A");
    SymCoeff r(*F_, rank_);
    SymMonomial mi = m;
    mi.d = -mi.d;
    r.insert_term(canon(std::move(mi)), APoly(*F_, {F_->inv(a.coeff(0))}));
    return r;
}

SymCoeff SymCoeff::frobenius_p() const {
    SymCoeff r(*F_, rank_);
    uint32_t p = F_->p();
    for (const auto& [m, a] : t_) {
        SymMonomial mp = m;
        for (int32_t& e : mp.g) e *= (int32_t)p;
        mp.d *= p;
        r.t_.emplace_back(canon(std::move(mp)), a.frobenius_pow(1));
    }
    // exponent scaling preserves the term order, so no re-sort is needed
    return r;
}

SymCoeff SymCoeff::frobenius_q_pow(uint32_t n) const {
    SymCoeff r = *this;
    for (uint32_t i = 0; i < n * F_->e(); ++i) r = r.frobenius_p();
    return r;
}

int64_t SymCoeff::min_delta_exp() const {
    int64_t m = 0;
    for (const auto& [mon, a] : t_) m = std::min(m, mon.d);
    return m;
}

std::string SymCoeff::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, a] : t_) {
        if (!first) os << " + ";
        first = false;
        bool trivial = m.d == 0 && m.g_total() == 0;
        std::string sc = a.to_string();
        bool needs_parens = sc.find('+') != std::string::npos && !trivial;
        if (trivial || !a.is_one()) {
            if (needs_parens) os << "(" << sc << ")";
            else os << sc;
            if (!trivial) os << "*";
        }
        bool printed = false;
        for (size_t i = 0; i < m.g.size(); ++i) {
            if (m.g[i] == 0) continue;
            if (printed) os << "*";
            os << "g" << (i + 1);
            if (m.g[i] != 1) os << "^" << m.g[i];
            printed = true;
        }
        if (m.d != 0) {
            if (printed) os << "*";
            os << "Dp";
            if (m.d != 1) os << "^" << m.d;
        }
    }
    return os.str();
}

AdditivePoly<SymCoeff> generic_phi_t(const FqField& F, uint32_t rank) {
    if (rank < 2) throw ArithmeticError("generic_phi_t: rank must be >= 2");
    std::vector<SymCoeff> c;
    c.reserve(rank);
    c.push_back(SymCoeff::from_apoly(APoly::t(F), rank));
    for (uint32_t i = 1; i + 1 < rank; ++i)
        c.push_back(SymCoeff::g_var(F, rank, i));
    c.push_back(SymCoeff::delta_power(F, rank, 1));
    return AdditivePoly<SymCoeff>(std::move(c));
}

AdditivePoly<SymCoeff> phi_a_symbolic(const APoly& a, uint32_t rank) {
    if (a.is_zero()) throw ArithmeticError("phi_a_symbolic: a must be nonzero");
    const FqField& F = a.field();
    AdditivePoly<SymCoeff> phi_t = generic_phi_t(F, rank);
    AdditivePoly<SymCoeff> power =
        AdditivePoly<SymCoeff>::identity(SymCoeff::one(F, rank));
    AdditivePoly<SymCoeff> result;
    for (int j = 0; j <= a.degree(); ++j) {
        if (j > 0) power = ap_compose(phi_t, power);
        uint32_t cj = a.coeff(j);
        if (cj == 0) continue;
        result = result + power.scaled_base(cj);
    }
    return result;
}

SymCoeff delta_a_power(const APoly& a, uint32_t rank) {
    if (a.is_zero()) throw ArithmeticError("delta_a_power: a must be nonzero");
    const FqField& F = a.field();
    uint32_t q = F.q();
    int64_t E = 0, qp = 1;
    for (int j = 0; j < a.degree(); ++j) {
        E += qp;
        for (uint32_t i = 0; i + 1 < rank; ++i) {
            qp *= q;
            if (qp > (int64_t)1 << 56)
                throw ArithmeticError("delta_a_power: exponent overflow");
        }
    }
    return SymCoeff::delta_power(F, rank, E).scaled_base(a.leading());
}

FaPoly f_a_build(const APoly& a, uint32_t rank, bool validate) {
    if (a.is_zero()) throw ArithmeticError("f_a_build: a must be nonzero");
    const FqField& F = a.field();
    uint32_t q = F.q();

    AdditivePoly<SymCoeff> phi = phi_a_symbolic(a, rank);
    int tau_deg = phi.tau_degree();
    int64_t Da = 1;
    for (int i = 0; i < tau_deg; ++i) {
        Da *= q;
        if (Da > (int64_t)1 << 56) throw ArithmeticError("f_a_build: degree overflow");
    }
    SymCoeff lead = ap_leading(phi);
    if (!(lead == delta_a_power(a, rank)))
        throw ConsistencyError("f_a_build: leading coefficient power law violated");
    SymCoeff lead_inv = lead.inv();

    FaPoly fa{a, rank, Da - 1, {}};
    // X^{Da} * phi_a(X^{-1}) = sum_i b_i X^{Da - q^i}; the top term cancels
    // against the subtracted 1 after dividing by the leading coefficient.
    int64_t qi = 1;
    std::vector<std::pair<int64_t, SymCoeff>> rev;
    for (int i = 0; i < tau_deg; ++i) {
        if (phi.has_coeff((size_t)i))
            rev.emplace_back(Da - qi, phi.coeff((size_t)i) * lead_inv);
        qi *= q;
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        fa.terms.push_back(std::move(*it));

    // structural invariants
    if (!fa.terms.empty()) {
        int64_t q_top = Da / q;  // q^{tau_deg - 1}
        if (fa.terms.front().first < Da - q_top || fa.terms.front().first <= 0)
            throw ConsistencyError("f_a_build: divisibility invariant violated");
    }
    if (a.degree() == 0 && !fa.terms.empty())
        throw ConsistencyError("f_a_build: f_a must vanish for deg a = 0");

    if (validate && a.degree() > 0) {
        // cross-check: inverting X^{Da} phi_a(X^{-1}) directly must agree with
        // Dprime_a^{-1} * (1 + f_a)^{-1} as truncated series in u
        int64_t M = std::min<int64_t>(Da + q, 48);
        SymCoeff z = SymCoeff::zero(F, rank);
        USeries<SymCoeff> L(M, z);
        L.set(0, lead);
        qi = 1;
        for (int i = 0; i < tau_deg; ++i) {
            int64_t e = Da - qi;
            if (e < M && phi.has_coeff((size_t)i)) L.set((size_t)e, phi.coeff((size_t)i));
            qi *= q;
        }
        USeries<SymCoeff> one_plus_fa = USeries<SymCoeff>::one(M, z);
        for (const auto& [e, c] : fa.terms)
            if (e < M) one_plus_fa.set((size_t)e, c);
        USeries<SymCoeff> lhs = L.inv();
        USeries<SymCoeff> rhs = one_plus_fa.inv();
        for (size_t i = 0; i < (size_t)M; ++i)
            rhs.set(i, rhs[i] * lead_inv);
        if (lhs != rhs)
            throw ConsistencyError("f_a_build: reciprocal identity check failed");
    }
    return fa;
}

RamifiedSeries specialize(const SymCoeff& x, const SpecValues& v) {
    if (x.rank() >= 3 && v.g.size() != x.rank() - 2)
        throw ArithmeticError("specialize: wrong number of g values");
    const SeriesDomain& dom = v.delta_prime.domain();
    // exact zero: infinitely precise within this computation
    if (x.is_zero()) return RamifiedSeries::zero(dom, (int64_t)1 << 40);

    bool have = false;
    RamifiedSeries acc;
    for (const auto& [m, a] : x.terms()) {
        RamifiedSeries term = RamifiedSeries::from_apoly(dom, a);
        for (size_t i = 0; i < m.g.size(); ++i) {
            if (m.g[i] == 0) continue;
            term = term * v.g[i].in_domain(dom).pow(m.g[i]);
        }
        if (m.d != 0) term = term * v.delta_prime.pow(m.d);
        acc = have ? acc + term : term;
        have = true;
    }
    return acc;
}

} // namespace drinfeld
