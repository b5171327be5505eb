#include "drinfeld/verify.hpp"

#include <functional>
#include <sstream>

namespace drinfeld {

namespace {
constexpr int64_t kExactPrec = (int64_t)1 << 40;

std::string point_params(const TestPoint& pt, int32_t B) {
    std::ostringstream os;
    os << "q=" << pt.q << " r=" << pt.r << " point=" << pt.index << " B=" << B
       << " cap=" << pt.dom.cap << " m=" << pt.dom.m;
    return os.str();
}
} // namespace

TestPoint make_test_point(uint32_t q, uint32_t r, int index, int32_t B, int32_t cap) {
    if (r < 2) throw ArithmeticError("make_test_point: rank must be >= 2");
    if (index < 0) throw ArithmeticError("make_test_point: negative index");
    // smallest multiple of q-1 admitting r distinct residues
    int32_t m = (int32_t)(q - 1);
    while (m < (int32_t)r) m += (int32_t)(q - 1);

    TestPoint pt;
    pt.q = q;
    pt.r = r;
    pt.index = index;
    pt.dom = xi_domain(q, m, cap);
    pt.xi = compute_xi(pt.dom).value;
    pt.B = B;

    // omega_i = s^{-b_i} xi; shifts distinct and nonzero mod m, so entry
    // valuations are pairwise distinct mod m
    for (uint32_t i = 1; i < r; ++i) {
        int64_t b = (int64_t)(r - i);
        if (i == 1) b += (int64_t)m * index;
        pt.shifts.push_back(b);
    }
    for (int64_t b : pt.shifts) pt.entries.push_back(pt.xi.shifted(-b));
    pt.entries.push_back(pt.xi);
    pt.region_n = (int)((pt.shifts[0] + m - 1) / m);

    Omega om = pt.omega();
    pt.u = u_param(om, B);

    AdditivePoly<RamifiedSeries> mod_t = phi_from_lattice(om.tail_lattice(B),
                                                          APoly::t(FqField::get(q)));
    if (mod_t.tau_degree() != (int)r - 1)
        throw ConsistencyError("make_test_point: unexpected module degree");
    for (int i = 1; i + 1 < (int)r; ++i)
        pt.module_values.g.push_back(mod_t.coeff((size_t)i));
    pt.module_values.delta_prime = ap_leading(mod_t);
    return pt;
}

Discrepancy verify_product_vs_direct(const TestPoint& pt, int64_t N,
                                     int64_t D_override, int32_t B,
                                     int target_digits) {
    Discrepancy d;
    d.name = "product_vs_direct";
    d.ram = pt.dom.m;
    {
        std::ostringstream os;
        os << point_params(pt, B) << " N=" << N;
        d.params = os.str();
    }
    Omega om = pt.omega();

    RamifiedSeries direct1 = delta_direct(om.lattice(B));
    RamifiedSeries direct2 = delta_direct(om.lattice(B + 1));
    SExp stable_B = difference_valuation(direct1, direct2);

    auto eval_at = [&](int64_t order, int32_t bound) {
        ExpansionResult ex = delta_expansion(pt.q, pt.r, order,
                                             ExpansionMode::kMonic, D_override);
        RamifiedSeries u = u_param(om, bound);
        SpecValues vals;
        AdditivePoly<RamifiedSeries> mod_t =
            phi_from_lattice(om.tail_lattice(bound), APoly::t(FqField::get(pt.q)));
        for (int i = 1; i + 1 < (int)pt.r; ++i)
            vals.g.push_back(mod_t.coeff((size_t)i));
        vals.delta_prime = ap_leading(mod_t);
        return evaluate_expansion(ex, vals, u);
    };
    RamifiedSeries ev1 = eval_at(N, B);
    RamifiedSeries ev2 = eval_at(N + 8, B + 1);
    SExp stable_N = difference_valuation(ev1, ev2);

    d.guaranteed_precision = sexp_to_i64(std::min(
        std::min(direct2.abs_prec(), ev2.abs_prec()), std::min(stable_B, stable_N)));
    d.difference_valuation = sexp_to_i64(difference_valuation(direct2, ev2));
    d.value_valuation = sexp_to_i64(direct2.val_lb());

    bool enough = d.guaranteed_precision >= target_digits &&
                  d.guaranteed_precision - d.value_valuation >= target_digits;
    d.precision_exhausted = !enough;
    d.pass = enough && d.difference_valuation >= d.guaranteed_precision;
    if (!d.pass && d.precision_exhausted)
        d.note = "certified precision below target";
    return d;
}

std::vector<Discrepancy> verify_covariance(const TestPoint& pt,
                                           const std::vector<GammaMatrix>& gammas) {
    std::vector<Discrepancy> out;
    Omega om = pt.omega();
    int32_t B = pt.B;
    uint64_t qr = 1;
    for (uint32_t i = 0; i < pt.r; ++i) qr *= pt.q;

    RamifiedSeries base1 = delta_direct(om.lattice(B));
    RamifiedSeries base2 = delta_direct(om.lattice(B + 1));
    SExp stable_base = difference_valuation(base1, base2);

    for (size_t gi = 0; gi < gammas.size(); ++gi) {
        Discrepancy d;
        d.name = "covariance";
        d.ram = pt.dom.m;
        {
            std::ostringstream os;
            os << point_params(pt, B) << " gamma=" << gi;
            d.params = os.str();
        }
        try {
            GammaAction act = gamma_act(gammas[gi], om, pt.xi);
            RamifiedSeries lhs1 = delta_direct(act.omega.lattice(B));
            RamifiedSeries lhs2 = delta_direct(act.omega.lattice(B + 1));
            SExp stable_lhs = difference_valuation(lhs1, lhs2);
            RamifiedSeries rhs = act.j.pow((int64_t)qr - 1) * base2;

            d.guaranteed_precision =
                sexp_to_i64(std::min(std::min(lhs2.abs_prec(), rhs.abs_prec()),
                                     std::min(stable_lhs, stable_base)));
            d.difference_valuation = sexp_to_i64(difference_valuation(lhs2, rhs));
            d.value_valuation = sexp_to_i64(lhs2.val_lb());
            bool enough = d.guaranteed_precision - d.value_valuation >= 10;
            d.precision_exhausted = !enough;
            d.pass = enough && d.difference_valuation >= d.guaranteed_precision;
        } catch (const std::exception& e) {
            d.pass = false;
            d.precision_exhausted = true;
            d.note = e.what();
        }
        out.push_back(std::move(d));
    }
    return out;
}

Discrepancy verify_exp_product_identity(const TestPoint& pt,
                                        const RamifiedSeries& X, int32_t Bprime) {
    Discrepancy d;
    d.name = "exp_product_identity";
    d.ram = pt.dom.m;
    {
        std::ostringstream os;
        os << point_params(pt, pt.B) << " Bprime=" << Bprime
           << " valX=" << sexp_to_string(X.val_lb());
        d.params = os.str();
    }
    Omega om = pt.omega();
    const SeriesDomain& dom = pt.dom;
    uint32_t q = pt.q;
    int32_t B = pt.B;

    RamifiedSeries lhs1 = exp_eval(om.lattice(B), X);
    RamifiedSeries lhs2 = exp_eval(om.lattice(B + 1), X);
    SExp stable_lhs = difference_valuation(lhs1, lhs2);

    LatticeExp Etail(om.tail_lattice(B));
    RamifiedSeries Y = Etail.eval(X);
    // e(a omega_1) by F_q-linearity from the values at t^j omega_1
    std::vector<RamifiedSeries> theta;
    for (int32_t j = 0; j <= Bprime; ++j)
        theta.push_back(Etail.eval(om.entry(0).shifted(-(int64_t)j * dom.m)));

    RamifiedSeries acc = Y;
    for (const APoly& a : MonicRange(FqField::get(q), Bprime)) {
        RamifiedSeries ta = RamifiedSeries::zero(dom, kExactPrec);
        for (int j = 0; j <= a.degree(); ++j) {
            if (a.coeff(j) == 0) continue;
            ta = ta + theta[(size_t)j].scaled_base(a.coeff(j));
        }
        // orbit over F_q^x collapses to 1 - (Y / theta_a)^{q-1}
        RamifiedSeries ratio = (Y * ta.inv()).pow((int64_t)q - 1);
        acc = acc * (RamifiedSeries::one(dom) - ratio);
    }

    // omitted monic a of degree >= Bprime+1: factor differs from 1 by
    // (Y / e(a omega_1))^{q-1} and |e(z)| >= |z| on the strict-triangle
    // points, so the tail sits above this valuation:
    SExp tail_rel = ((SExp)q - 1) *
                    (Y.val_lb() - om.entry(0).val_lb() + (SExp)dom.m * (Bprime + 1));
    d.guaranteed_precision =
        sexp_to_i64(std::min(std::min(lhs2.abs_prec(), acc.abs_prec()),
                             std::min(stable_lhs, acc.val_lb() + tail_rel)));
    d.difference_valuation = sexp_to_i64(difference_valuation(lhs2, acc));
    d.value_valuation = sexp_to_i64(lhs2.val_lb());
    bool enough = d.guaranteed_precision - d.value_valuation >= 5;
    d.precision_exhausted = !enough;
    d.pass = enough && d.difference_valuation >= d.guaranteed_precision;
    return d;
}

Discrepancy verify_torsion_product_identity(const TestPoint& pt,
                                            const RamifiedSeries& z0) {
    Discrepancy d;
    d.name = "torsion_product_identity";
    d.ram = pt.dom.m;
    {
        std::ostringstream os;
        os << point_params(pt, pt.B) << " valz0=" << sexp_to_string(z0.val_lb());
        d.params = os.str();
    }
    Omega om = pt.omega();
    const SeriesDomain& dom = pt.dom;
    uint32_t q = pt.q;
    const FqField& Fq = FqField::get(q);
    LatticeSpec tail = om.tail_lattice(pt.B);
    LatticeExp E(tail);
    AdditivePoly<RamifiedSeries> phi = phi_from_lattice(tail, APoly::t(Fq));
    RamifiedSeries dp = ap_leading(phi);

    // translates z0 + e(alpha), alpha over (t^{-1}A/A)^{r-1} including 0
    uint64_t total = 1;
    for (uint32_t i = 0; i + 1 < pt.r; ++i) total *= q;
    std::vector<RamifiedSeries> zs;
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t rest = idx;
        RamifiedSeries a = RamifiedSeries::zero(dom, kExactPrec);
        for (size_t i = 0; i < tail.basis.size(); ++i) {
            uint32_t ci = (uint32_t)(rest % q);
            rest /= q;
            if (ci == 0) continue;
            a = a + tail.basis[i].scaled_base(ci).shifted(dom.m);
        }
        zs.push_back(idx == 0 ? z0 : z0 + E.eval(a));
    }

    // lhs: Dprime * prod (X - z), dense in X
    std::vector<RamifiedSeries> lhs{RamifiedSeries::one(dom)};
    for (const auto& z : zs) {
        std::vector<RamifiedSeries> nxt(lhs.size() + 1,
                                        RamifiedSeries::zero(dom, kExactPrec));
        for (size_t k = 0; k < lhs.size(); ++k) {
            nxt[k + 1] = nxt[k + 1] + lhs[k];
            nxt[k] = nxt[k] - lhs[k] * z;
        }
        lhs = std::move(nxt);
    }
    for (auto& c : lhs) c = c * dp;

    // rhs: phi_t(X - z0) = phi_t(X) - phi_t(z0)
    std::vector<RamifiedSeries> rhs(lhs.size(), RamifiedSeries::zero(dom, kExactPrec));
    rhs[0] = -ap_eval(phi, z0);
    uint64_t qpow = 1;
    for (size_t i = 0; i < phi.coeffs().size(); ++i) {
        rhs[(size_t)qpow] = phi.coeff(i);
        qpow *= q;
    }

    SExp guaranteed = kExactPrec, diff = kExactPrec, value_val = kExactPrec;
    for (size_t k = 0; k < lhs.size(); ++k) {
        guaranteed = std::min(guaranteed,
                              std::min(lhs[k].abs_prec(), rhs[k].abs_prec()));
        diff = std::min(diff, difference_valuation(lhs[k], rhs[k]));
        if (!lhs[k].is_zero_at_prec())
            value_val = std::min(value_val, lhs[k].val_lb());
    }
    d.guaranteed_precision = sexp_to_i64(guaranteed);
    d.difference_valuation = sexp_to_i64(diff);
    d.value_valuation = sexp_to_i64(value_val);
    bool enough = guaranteed - value_val >= 5;
    d.precision_exhausted = !enough;
    d.pass = enough && diff >= guaranteed;
    return d;
}

std::vector<BoundRow> decay_table(const TestPoint& pt, int max_degree) {
    const SeriesDomain& dom = pt.dom;
    uint32_t q = pt.q;
    const FqField& Fq = FqField::get(q);

    // numeric phi'_t from the point's module values
    std::vector<RamifiedSeries> c;
    c.push_back(RamifiedSeries::from_apoly(dom, APoly::t(Fq)));
    for (const auto& g : pt.module_values.g) c.push_back(g);
    c.push_back(pt.module_values.delta_prime);
    AdditivePoly<RamifiedSeries> phi_t(std::move(c));

    std::vector<AdditivePoly<RamifiedSeries>> pows{
        AdditivePoly<RamifiedSeries>::identity(RamifiedSeries::one(dom))};
    for (int j = 1; j <= max_degree; ++j)
        pows.push_back(ap_compose(phi_t, pows.back()));

    std::vector<BoundRow> rows;
    for (int deg = 1; deg <= max_degree; ++deg) {
        BoundRow row;
        row.degree = deg;
        SExp min_val = kExactPrec;
        int tau = (int)(pt.r - 1) * deg;
        int64_t Da = 1;
        for (int i = 0; i < tau; ++i) Da *= q;
        row.predicted_exponent = Da - Da / q;
        for (const APoly& a : monic_of_degree(Fq, deg)) {
            AdditivePoly<RamifiedSeries> phi_a;
            for (int j = 0; j <= a.degree(); ++j) {
                if (a.coeff(j) == 0) continue;
                phi_a = phi_a + pows[(size_t)j].scaled_base(a.coeff(j));
            }
            RamifiedSeries lead_inv = ap_leading(phi_a).inv();
            RamifiedSeries val = RamifiedSeries::zero(dom, kExactPrec);
            int64_t qi = 1;
            for (int i = 0; i < tau; ++i) {
                if (phi_a.has_coeff((size_t)i))
                    val = val + phi_a.coeff((size_t)i) * lead_inv *
                                    pt.u.pow(Da - qi);
                qi *= q;
            }
            min_val = std::min(min_val, val.val_lb());
        }
        row.min_valuation = sexp_to_i64(min_val);
        rows.push_back(row);
    }
    return rows;
}

std::vector<GammaMatrix> builtin_gamma_suite(const FqField& F, uint32_t r) {
    std::vector<GammaMatrix> out;
    out.push_back(GammaMatrix::identity(F, r));

    GammaMatrix swap01 = GammaMatrix::identity(F, r);
    swap01.a[0][0] = APoly::zero(F);
    swap01.a[1][1] = APoly::zero(F);
    swap01.a[0][1] = APoly::one(F);
    swap01.a[1][0] = APoly::one(F);
    out.push_back(swap01);

    GammaMatrix upper_t = GammaMatrix::identity(F, r);
    upper_t.a[0][1] = APoly::t(F);
    out.push_back(upper_t);

    GammaMatrix lower_t = GammaMatrix::identity(F, r);
    lower_t.a[1][0] = APoly::t(F);
    out.push_back(lower_t);

    GammaMatrix upper_t2 = GammaMatrix::identity(F, r);
    upper_t2.a[0][1] = APoly(F, {1, 0, 1});  // t^2 + 1
    out.push_back(upper_t2);

    GammaMatrix shear = GammaMatrix::identity(F, r);
    shear.a[0][1] = APoly::one(F);
    out.push_back(shear);

    if (r >= 3) {
        GammaMatrix upper_02 = GammaMatrix::identity(F, r);
        upper_02.a[0][2] = APoly::t(F);
        out.push_back(upper_02);
    }
    if (F.q() > 2) {
        GammaMatrix diag = GammaMatrix::identity(F, r);
        diag.a[r - 1][r - 1] = APoly(F, {F.neg(1)});
        out.push_back(diag);
    }
    return out;
}

RamifiedSeries random_series(const SeriesDomain& dom, int64_t vmin, int width,
                             std::mt19937_64& rng) {
    std::vector<uint32_t> digits((size_t)width);
    digits[0] = 1 + (uint32_t)(rng() % (dom.F->q() - 1));
    for (int i = 1; i < width; ++i) digits[(size_t)i] = (uint32_t)(rng() % dom.F->q());
    return RamifiedSeries::from_digits(dom, vmin, std::move(digits), vmin + dom.cap);
}

namespace {

void run_guarded(SuiteReport& rep, const std::string& name, const std::string& params,
                 const std::function<Discrepancy()>& fn) {
    Discrepancy d;
    try {
        d = fn();
    } catch (const std::exception& e) {
        d.name = name;
        d.params = params;
        d.pass = false;
        d.precision_exhausted = true;
        d.note = e.what();
    }
    rep.all_pass = rep.all_pass && d.pass;
    rep.any_precision_exhausted = rep.any_precision_exhausted || d.precision_exhausted;
    rep.cases.push_back(std::move(d));
}

Discrepancy exact_case(const std::string& name, const std::string& params, bool ok,
                       const std::string& note = "") {
    Discrepancy d;
    d.name = name;
    d.params = params;
    d.pass = ok;
    d.note = note.empty() ? (ok ? "exact" : "exact check failed") : note;
    return d;
}

} // namespace

SuiteReport run_verify_suite(const SuiteOptions& opt) {
    SuiteReport rep;
    std::mt19937_64 rng(opt.seed);

    struct PointKey { uint32_t q, r; int idx; int64_t N; };
    std::vector<PointKey> core = {
        {2, 2, 0, opt.N_rank2}, {2, 2, 1, opt.N_rank2}, {2, 2, 2, opt.N_rank2},
        {3, 2, 0, opt.N_rank2}, {3, 2, 1, opt.N_rank2}, {3, 2, 2, opt.N_rank2},
        {2, 3, 0, opt.N_rank3}, {2, 3, 1, opt.N_rank3},
    };

    // 1-2. product formula vs lattice definition, all built-in points
    for (const auto& k : core) {
        std::ostringstream ps;
        ps << "q=" << k.q << " r=" << k.r << " point=" << k.idx;
        run_guarded(rep, "product_vs_direct", ps.str(), [&] {
            TestPoint pt = make_test_point(k.q, k.r, k.idx, opt.B, opt.P);
            return verify_product_vs_direct(pt, k.N, opt.D_override, opt.B,
                                            opt.target_digits);
        });
    }

    // 11. stability: raising B, P and D must keep every pass a pass
    if (opt.with_stability) {
        for (const auto& k : core) {
            std::ostringstream ps;
            ps << "q=" << k.q << " r=" << k.r << " point=" << k.idx
               << " bumped B/P/D";
            run_guarded(rep, "stability", ps.str(), [&] {
                TestPoint pt = make_test_point(k.q, k.r, k.idx, opt.B + 1, opt.P + 16);
                int64_t D = opt.D_override >= 0
                                ? opt.D_override + 1
                                : degree_bound(k.N, k.q, k.r) + 1;
                Discrepancy d = verify_product_vs_direct(pt, k.N, D, opt.B + 1,
                                                         opt.target_digits);
                d.name = "stability";
                return d;
            });
        }
    }

    // 8. modular covariance
    for (auto [q, r] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 2}, {3, 2}, {2, 3}}) {
        std::ostringstream ps;
        ps << "q=" << q << " r=" << r << " point=0";
        TestPoint pt;
        try {
            pt = make_test_point(q, r, 0, opt.B, opt.P);
        } catch (const std::exception& e) {
            Discrepancy d;
            d.name = "covariance";
            d.params = ps.str();
            d.precision_exhausted = true;
            d.note = e.what();
            rep.all_pass = false;
            rep.any_precision_exhausted = true;
            rep.cases.push_back(std::move(d));
            continue;
        }
        for (auto& d : verify_covariance(pt, builtin_gamma_suite(FqField::get(q), r))) {
            rep.all_pass = rep.all_pass && d.pass;
            rep.any_precision_exhausted =
                rep.any_precision_exhausted || d.precision_exhausted;
            rep.cases.push_back(std::move(d));
        }
    }

    // 7. proof-identity property tests at random points
    struct IdSpec { uint32_t q, r; int count; };
    for (const IdSpec& s : {IdSpec{2, 2, 4}, IdSpec{3, 2, 4}, IdSpec{2, 3, 2}}) {
        for (int i = 0; i < s.count; ++i) {
            std::ostringstream ps;
            ps << "q=" << s.q << " r=" << s.r << " sample=" << i;
            run_guarded(rep, "exp_product_identity", ps.str(), [&] {
                TestPoint pt = make_test_point(s.q, s.r, 0, opt.B, opt.P);
                RamifiedSeries X =
                    random_series(pt.dom, pt.entries[0].val_lb() + 1, 8, rng);
                return verify_exp_product_identity(pt, X, 6);
            });
            run_guarded(rep, "torsion_product_identity", ps.str(), [&] {
                TestPoint pt = make_test_point(s.q, s.r, 0, opt.B, opt.P);
                RamifiedSeries z0 =
                    random_series(pt.dom, pt.entries[0].val_lb() + 1, 8, rng);
                return verify_torsion_product_identity(pt, z0);
            });
        }
    }

    // 9. decay of the per-degree factor bound
    for (uint32_t q : {2u, 3u}) {
        std::ostringstream ps;
        ps << "q=" << q << " r=2 point=0 deg<=4";
        run_guarded(rep, "factor_decay", ps.str(), [&] {
            TestPoint pt = make_test_point(q, 2, 0, opt.B, opt.P);
            auto rows = decay_table(pt, 4);
            Discrepancy d;
            d.name = "factor_decay";
            d.params = ps.str();
            d.ram = pt.dom.m;
            bool ok = true;
            for (size_t i = 1; i < rows.size(); ++i)
                ok = ok && rows[i].min_valuation > rows[i - 1].min_valuation;
            std::ostringstream note;
            note << "valuations:";
            for (const auto& r0 : rows) note << " " << r0.min_valuation;
            d.note = note.str();
            d.pass = ok;
            d.guaranteed_precision = rows.empty() ? 0 : rows.back().min_valuation;
            return d;
        });
    }

    // 3-4. mode agreement, prefactor and support
    struct ModeSpec { uint32_t q, r; int64_t N; };
    for (const ModeSpec& s : {ModeSpec{2, 2, 30}, ModeSpec{3, 2, 30}, ModeSpec{2, 3, 15}}) {
        std::ostringstream ps;
        ps << "q=" << s.q << " r=" << s.r << " N=" << s.N;
        run_guarded(rep, "mode_agreement", ps.str(), [&] {
            ExpansionResult em = delta_expansion(s.q, s.r, s.N, ExpansionMode::kMonic);
            ExpansionResult ef = delta_expansion(s.q, s.r, s.N, ExpansionMode::kFull);
            return exact_case("mode_agreement", ps.str(), em.same_series(ef));
        });
        run_guarded(rep, "prefactor_support", ps.str(), [&] {
            ExpansionResult em = delta_expansion(s.q, s.r, s.N, ExpansionMode::kMonic);
            const FqField& F = FqField::get(s.q);
            SymCoeff want = -SymCoeff::delta_power(F, s.r, (int64_t)s.q);
            bool ok = em.prefactor_shift == (int64_t)s.q - 1 &&
                      em.coeffs[0] == want && em.min_delta_exp <= 0;
            return exact_case("prefactor_support", ps.str(), ok);
        });
        run_guarded(rep, "truncation_consistency", ps.str(), [&] {
            ExpansionResult big = delta_expansion(s.q, s.r, 2 * s.N, ExpansionMode::kMonic);
            ExpansionResult small = delta_expansion(s.q, s.r, s.N, ExpansionMode::kMonic);
            bool ok = true;
            for (int64_t i = 0; i < s.N; ++i)
                ok = ok && small.coeffs[(size_t)i] == big.coeffs[(size_t)i];
            return exact_case("truncation_consistency", ps.str(), ok);
        });
    }

    // 5. divisibility and degeneration of the factor polynomials
    for (uint32_t q : {2u, 3u}) {
        for (uint32_t r : {2u, 3u}) {
            std::ostringstream ps;
            ps << "q=" << q << " r=" << r << " deg<=3";
            run_guarded(rep, "factor_divisibility", ps.str(), [&] {
                const FqField& F = FqField::get(q);
                bool ok = true;
                for (uint32_t c = 1; c < q && ok; ++c) {
                    FaPoly fc = f_a_build(APoly(F, {c}), r);
                    ok = fc.terms.empty();
                }
                for (const APoly& a : MonicRange(F, 3)) {
                    if (a.degree() < 1) continue;
                    FaPoly fa = f_a_build(a, r);
                    int tau = (int)(r - 1) * a.degree();
                    int64_t Da = 1;
                    for (int i = 0; i < tau; ++i) Da *= q;
                    for (const auto& [e, cf] : fa.terms)
                        ok = ok && e >= Da - Da / q && e >= 1 && !cf.is_zero();
                    for (uint32_t c = 2; c < q; ++c) {
                        FaPoly fca = f_a_build(a.scaled(c), r);
                        ok = ok && fca.terms.size() == fa.terms.size();
                        for (size_t i = 0; i < fa.terms.size() && ok; ++i)
                            ok = fca.terms[i].first == fa.terms[i].first &&
                                 fca.terms[i].second == fa.terms[i].second;
                    }
                    if (!ok) break;
                }
                return exact_case("factor_divisibility", ps.str(), ok);
            });
        }
    }

    // 6. ring homomorphism and the leading-coefficient power law
    for (uint32_t q : {2u, 3u}) {
        for (uint32_t r : {2u, 3u}) {
            std::ostringstream ps;
            ps << "q=" << q << " r=" << r;
            run_guarded(rep, "ring_homomorphism", ps.str(), [&] {
                const FqField& F = FqField::get(q);
                bool ok = true;
                for (int trial = 0; trial < 5 && ok; ++trial) {
                    APoly a = APoly::from_index(F, 1 + rng() % (q * q * q * q - 1));
                    APoly b = APoly::from_index(F, 1 + rng() % (q * q * q * q - 1));
                    auto lhs = phi_a_symbolic(a * b, r);
                    auto rhs = ap_compose(phi_a_symbolic(a, r), phi_a_symbolic(b, r));
                    auto rhs2 = ap_compose(phi_a_symbolic(b, r), phi_a_symbolic(a, r));
                    ok = lhs.tau_degree() == rhs.tau_degree() &&
                         rhs.tau_degree() == rhs2.tau_degree();
                    for (int i = 0; ok && i <= lhs.tau_degree(); ++i)
                        ok = lhs.coeff((size_t)i) == rhs.coeff((size_t)i) &&
                             lhs.coeff((size_t)i) == rhs2.coeff((size_t)i);
                }
                for (const APoly& a : MonicRange(F, 3)) {
                    if (a.is_zero() || !ok) break;
                    for (uint32_t c = 1; c < q && ok; ++c) {
                        APoly ca = a.scaled(c);
                        ok = ap_leading(phi_a_symbolic(ca, r)) == delta_a_power(ca, r);
                    }
                }
                return exact_case("ring_homomorphism", ps.str(), ok);
            });
        }
    }

    // numeric power law at the built-in points
    for (auto [q, r] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 2}, {3, 2}, {2, 3}}) {
        std::ostringstream ps;
        ps << "q=" << q << " r=" << r << " point=0";
        run_guarded(rep, "power_law_numeric", ps.str(), [&] {
            TestPoint pt = make_test_point(q, r, 0, opt.B, opt.P);
            const FqField& F = FqField::get(q);
            LatticeSpec tail = pt.omega().tail_lattice(opt.B);
            APoly t2 = APoly::t(F) * APoly::t(F);
            RamifiedSeries lead2 = ap_leading(phi_from_lattice(tail, t2));
            uint64_t qr1 = 1;
            for (uint32_t i = 0; i + 1 < r; ++i) qr1 *= q;
            RamifiedSeries want = pt.module_values.delta_prime.pow((int64_t)(1 + qr1));
            Discrepancy d;
            d.name = "power_law_numeric";
            d.params = ps.str();
            d.ram = pt.dom.m;
            d.guaranteed_precision =
                sexp_to_i64(std::min(lead2.abs_prec(), want.abs_prec()));
            d.difference_valuation = sexp_to_i64(difference_valuation(lead2, want));
            d.value_valuation = sexp_to_i64(want.val_lb());
            bool enough = d.guaranteed_precision - d.value_valuation >= 10;
            d.precision_exhausted = !enough;
            d.pass = enough && d.difference_valuation >= d.guaranteed_precision;
            return d;
        });
    }

    // 10. exponentiation strategies agree
    {
        std::ostringstream ps;
        ps << "50 random instances";
        run_guarded(rep, "charp_pow_agreement", ps.str(), [&] {
            bool ok = true;
            for (int trial = 0; trial < 50 && ok; ++trial) {
                uint32_t q = trial % 2 ? 3 : 2;
                uint32_t r = trial % 4 < 2 ? 2 : 3;
                const FqField& F = FqField::get(q);
                int64_t order = 12 + (int64_t)(rng() % 8);
                SymCoeff zero = SymCoeff::zero(F, r);
                USeries<SymCoeff> x = USeries<SymCoeff>::one(order, zero);
                for (int64_t i = 1; i < order; ++i) {
                    if (rng() % 3 == 0) continue;
                    APoly sc = APoly::from_index(F, rng() % (q * q * q));
                    SymCoeff cf = SymCoeff::from_apoly(sc, r);
                    if (r >= 3 && rng() % 2)
                        cf = cf * SymCoeff::delta_power(F, r, (int64_t)(rng() % 5) - 2);
                    x.set((size_t)i, cf);
                }
                uint64_t E = rng() % 200;
                uint32_t p = F.p();
                ok = charp_pow(x, E, p) == naive_pow(x, E);
            }
            return exact_case("charp_pow_agreement", ps.str(), ok);
        });
    }

    // determinism of the expansion engine
    {
        std::ostringstream ps;
        ps << "q=3 r=2 N=30 repeated";
        run_guarded(rep, "determinism", ps.str(), [&] {
            ExpansionResult a = delta_expansion(3, 2, 30, ExpansionMode::kMonic);
            ExpansionResult b = delta_expansion(3, 2, 30, ExpansionMode::kMonic);
            return exact_case("determinism", ps.str(), a.same_series(b));
        });
    }

    return rep;
}

} // namespace drinfeld
