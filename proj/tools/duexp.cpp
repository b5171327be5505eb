#include <chrono>
#include <sstream>
#include <iostream>

#include <CLI11.hpp>

#include "drinfeld/json_io.hpp"

namespace {

using namespace drinfeld;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;

struct CommonOpts {
    uint32_t q = 3;
    uint32_t r = 2;
    int64_t N = 50;
    std::string mode = "monic";
    int32_t B = 24;
    int32_t P = 200;
    int64_t D = -1;
    uint64_t seed = 1;
    std::string format = "json";
    std::string out;
    int point = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--q", o.q, "field size (prime power)");
    cmd->add_option("--r", o.r, "rank (>= 2)");
    cmd->add_option("--N", o.N, "u-expansion truncation order");
    cmd->add_option("--mode", o.mode, "product mode: monic|full")
        ->check(CLI::IsMember({"monic", "full"}));
    cmd->add_option("--B", o.B, "lattice enumeration degree bound");
    cmd->add_option("--P", o.P, "series precision (relative s-digits)");
    cmd->add_option("--D", o.D, "product degree bound override");
    cmd->add_option("--seed", o.seed, "seed for randomized checks");
    cmd->add_option("--format", o.format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--point", o.point, "built-in test point index");
}

bool validate(const CommonOpts& o, std::string& err) {
    uint32_t p, e;
    if (!factor_prime_power(o.q, p, e) || o.q > (1u << 16)) {
        err = "--q must be a prime power <= 2^16";
        return false;
    }
    if (o.r < 2) { err = "--r must be >= 2"; return false; }
    if (o.N < 1) { err = "--N must be >= 1"; return false; }
    if (o.B < 0) { err = "--B must be >= 0"; return false; }
    if (o.P < 8) { err = "--P must be >= 8"; return false; }
    return true;
}

ExpansionMode parse_mode(const std::string& s) {
    return s == "full" ? ExpansionMode::kFull : ExpansionMode::kMonic;
}

int cmd_expand(const CommonOpts& o) {
    ExpansionResult ex = delta_expansion(o.q, o.r, o.N, parse_mode(o.mode), o.D);
    std::string body = o.format == "json" ? expansion_to_json(ex).dump(2)
                                          : expansion_to_text(ex);
    write_output(o.out, body);
    std::ostream& info = o.out.empty() ? std::cerr : std::cout;
    info << "D=" << ex.D << " factors=" << ex.factor_count << "\n";
    return kExitOk;
}

int cmd_verify(const CommonOpts& o) {
    SuiteOptions sopt;
    sopt.B = o.B;
    sopt.P = o.P;
    sopt.N_rank2 = std::max<int64_t>(o.N, 16);
    sopt.N_rank3 = std::max<int64_t>(std::min<int64_t>(o.N, 20), 10);
    sopt.D_override = o.D;
    sopt.seed = o.seed;
    SuiteReport rep = run_verify_suite(sopt);
    std::string body = o.format == "json" ? report_to_json(rep).dump(2)
                                          : report_to_text(rep);
    write_output(o.out, body);
    if (rep.all_pass) return kExitOk;
    return rep.any_precision_exhausted ? kExitPrecision : kExitVerifyFail;
}

int cmd_eval(const CommonOpts& o) {
    TestPoint pt = make_test_point(o.q, o.r, o.point, o.B, o.P);
    Discrepancy d = verify_product_vs_direct(pt, o.N, o.D, o.B);
    RamifiedSeries direct = delta_direct(pt.omega().lattice(o.B));

    ordered_json j;
    j["q"] = o.q;
    j["r"] = o.r;
    j["point"] = o.point;
    ordered_json shifts = ordered_json::array();
    for (int64_t b : pt.shifts) shifts.push_back(b);
    j["shifts"] = shifts;
    j["region_n"] = pt.region_n;
    j["u"] = series_to_json(pt.u);
    j["delta_prime"] = series_to_json(pt.module_values.delta_prime);
    j["delta_direct"] = series_to_json(direct);
    ordered_json check;
    check["pass"] = d.pass;
    check["valuation_of_difference"] = d.difference_valuation;
    check["guaranteed_precision"] = d.guaranteed_precision;
    check["ram"] = d.ram;
    j["product_check"] = check;
    if (o.format == "json") {
        write_output(o.out, j.dump(2));
    } else {
        std::ostringstream os;
        os << "point q=" << o.q << " r=" << o.r << " #" << o.point
           << "  region_n=" << pt.region_n << "\n"
           << "u           = " << pt.u.to_string() << "\n"
           << "delta_prime = " << pt.module_values.delta_prime.to_string() << "\n"
           << "delta       = " << direct.to_string() << "\n"
           << "product check: " << (d.pass ? "pass" : "FAIL")
           << "  diff_val=" << d.difference_valuation
           << " guaranteed=" << d.guaranteed_precision << " (m=" << d.ram << ")\n";
        write_output(o.out, os.str());
    }
    if (d.pass) return kExitOk;
    return d.precision_exhausted ? kExitPrecision : kExitVerifyFail;
}

int cmd_bench(const CommonOpts& o) {
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration_cast<std::chrono::microseconds>(b - a).count() /
               1000.0;
    };

    auto time_expansion = [&](PowStrategy s) {
        double best = 1e30;
        ExpansionResult last;
        for (int rep = 0; rep < 3; ++rep) {
            auto t0 = clock::now();
            last = delta_expansion(o.q, o.r, o.N, parse_mode(o.mode), o.D, s,
                                   /*validate_factors=*/false);
            auto t1 = clock::now();
            best = std::min(best, ms(t0, t1));
        }
        return std::make_pair(best, last);
    };

    auto [charp_ms, ex_charp] = time_expansion(PowStrategy::kCharP);
    auto [naive_ms, ex_naive] = time_expansion(PowStrategy::kNaive);
    bool identical = ex_charp.same_series(ex_naive);

    // product vs lattice definition at matched resources
    TestPoint pt = make_test_point(o.q, o.r, o.point, o.B, o.P);
    auto t0 = clock::now();
    RamifiedSeries direct = delta_direct(pt.omega().lattice(o.B));
    auto t1 = clock::now();
    RamifiedSeries viaprod = evaluate_expansion(ex_charp, pt.module_values, pt.u);
    auto t2 = clock::now();

    ordered_json j;
    j["q"] = o.q;
    j["r"] = o.r;
    j["N"] = o.N;
    j["charp_pow_ms"] = charp_ms;
    j["naive_pow_ms"] = naive_ms;
    j["speedup"] = naive_ms / std::max(charp_ms, 1e-9);
    j["outputs_identical"] = identical;
    j["delta_direct_ms"] = ms(t0, t1);
    j["expansion_eval_ms"] = ms(t1, t2);
    j["direct_vs_product_agree"] = agrees_at_precision(
        direct.truncated(std::min(direct.abs_prec(), viaprod.abs_prec())),
        viaprod.truncated(std::min(direct.abs_prec(), viaprod.abs_prec())));
    write_output(o.out, j.dump(2));
    return identical ? kExitOk : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"u-expansions of the Drinfeld discriminant over F_q[t]"};
    app.require_subcommand(1);

    CommonOpts o;
    CLI::App* expand = app.add_subcommand("expand", "compute the u-expansion");
    CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");
    CLI::App* eval = app.add_subcommand("eval", "evaluate Delta at a built-in point");
    CLI::App* bench = app.add_subcommand("bench", "exponentiation and evaluation timings");
    for (CLI::App* c : {expand, verify, eval, bench}) add_common(c, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    std::string err;
    if (!validate(o, err)) {
        std::cerr << "usage error: " << err << "\n";
        return kExitUsage;
    }

    try {
        if (expand->parsed()) return cmd_expand(o);
        if (verify->parsed()) return cmd_verify(o);
        if (eval->parsed()) return cmd_eval(o);
        if (bench->parsed()) return cmd_bench(o);
    } catch (const PrecisionError& e) {
        std::cerr << "precision exhaustion: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
