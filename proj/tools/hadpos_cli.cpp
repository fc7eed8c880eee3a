#include "hadpos/matrix_io.hpp"
#include "hadpos/oracle.hpp"
#include "hadpos/pencil.hpp"
#include "hadpos/schur.hpp"
#include "hadpos/strata.hpp"
#include "hadpos/suites.hpp"
#include "hadpos/threshold.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hadpos;

// Decimal or fraction string to an exact rational: "1.25" -> 5/4,
// "-3/7" -> -3/7, "2" -> 2.
Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    try {
        if (dot == std::string::npos) return Rational(BigInt(s));
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if (frac.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad number '" + s + "'");
        bool neg = !whole.empty() && whole[0] == '-';
        BigInt w = whole.empty() || whole == "-" || whole == "+" ? BigInt(0) : BigInt(whole);
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
        BigInt num = abs(w) * scale + f;
        if (neg || w < 0) num = -num;
        return Rational(num, scale);
    } catch (const std::exception&) {
        throw ParseError("cannot parse number '" + s + "'");
    }
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
    if (out.empty()) throw ParseError("empty list");
    return out;
}

std::vector<long long> parse_int_list(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    if (out.empty()) throw ParseError("empty list");
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HP_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

struct Options {
    std::string coeffs, matrix_path, weight_path, partition, points, suite = "all",
                group = "trivial", t_min = "1/1000000", rho = "1";
    long long degree = 0, dim = 0, extra = 0, ones = 0, trials = 100;
    double extra_coeff = 0.0;
    std::uint64_t seed = default_seed();
    bool exact = false, json_out = false;
};

int cmd_threshold(const Options& o) {
    CoeffVector c(parse_rational_list(o.coeffs));
    ThresholdQuery q{c, o.degree, o.dim ? o.dim : c.dim(), parse_rational(o.rho)};
    auto tv = threshold_constant(q);
    Rational lower = Rational(-1) / tv.exact;
    if (o.json_out) {
        json j{{"C", tv.float_view},
               {"C_exact", to_string(tv.exact)},
               {"lower_coefficient_bound", to_string(lower)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "C = " << tv.float_view << " (exact " << to_string(tv.exact)
                  << "), lower coefficient bound = " << to_string(lower) << "\n";
    }
    return 0;
}

int cmd_check(const Options& o) {
    HermMatrix A = load_matrix(o.matrix_path);
    auto cs = parse_rational_list(o.coeffs);
    std::vector<double> coeffs;
    std::vector<long long> exps;
    for (std::size_t j = 0; j < cs.size(); ++j) {
        coeffs.push_back(to_double(cs[j]));
        exps.push_back(static_cast<long long>(j));
    }
    coeffs.push_back(o.extra_coeff);
    exps.push_back(o.extra == 0 ? static_cast<long long>(cs.size()) : o.extra);
    auto verdict = psd_check(entrywise_poly(A, coeffs, exps));
    if (o.json_out) {
        json j{{"psd", verdict.is_psd},
               {"min_eigenvalue", verdict.min_eigenvalue},
               {"tolerance", verdict.tolerance_used}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "f[A] is " << (verdict.is_psd ? "PSD" : "not PSD")
                  << ", min eigenvalue = " << verdict.min_eigenvalue << "\n";
    }
    return 0;
}

int cmd_critical_value(const Options& o) {
    HermMatrix A = load_matrix(o.matrix_path);
    CoeffVector c(parse_rational_list(o.coeffs));
    if (o.exact) {
        // exact path requires a real rank-one matrix with rational entries
        CVector u = rank_one_factor(A);
        RatVector ur(static_cast<std::size_t>(u.size()));
        for (int i = 0; i < u.size(); ++i) {
            if (std::abs(u(i).imag()) > 1e-14)
                throw Error("--exact requires a real rank-one matrix");
            ur[static_cast<std::size_t>(i)] = rat_from_double(u(i).real());
        }
        auto v = critical_value_rank_one_exact(ur, c, o.degree);
        if (!v) throw Error("singular base pencil; exact rank-one formula unavailable");
        if (o.json_out)
            std::cout << json{{"value_exact", to_string(*v)}, {"value", to_double(*v)}}.dump(2)
                      << "\n";
        else
            std::cout << "C(c; z^" << o.degree << "; A) = " << to_string(*v) << " ("
                      << to_double(*v) << ")\n";
        return 0;
    }
    auto res = critical_value(A, c, o.degree);
    if (o.json_out) {
        json j{{"value", res.value}};
        if (res.optimizer) {
            json v = json::array();
            for (int i = 0; i < res.optimizer->size(); ++i)
                v.push_back(json::array({(*res.optimizer)(i).real(), (*res.optimizer)(i).imag()}));
            j["optimizer"] = std::move(v);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "C(c; z^" << o.degree << "; A) = " << res.value << "\n";
    }
    return 0;
}

int cmd_witness_sweep(const Options& o) {
    CoeffVector c(parse_rational_list(o.coeffs));
    Rational tmin = parse_rational(o.t_min);
    std::vector<Rational> grid;
    for (Rational t(1, 10 * c.dim()); t >= tmin; t /= 10) grid.push_back(t);
    auto vals = sup_over_witness_family(c, o.degree, parse_rational(o.rho), grid);
    Rational bound =
        threshold_constant({c, o.degree, c.dim(), parse_rational(o.rho)}).exact;
    if (o.json_out) {
        json rows = json::array();
        for (const auto& [t, v] : vals)
            rows.push_back({{"t", to_string(t)}, {"value", to_double(v)},
                            {"value_exact", to_string(v)}});
        std::cout << json{{"sweep", rows}, {"upper_bound", to_string(bound)}}.dump(2)
                  << "\n";
    } else {
        for (const auto& [t, v] : vals)
            std::cout << "t = " << to_string(t) << "  value = " << to_double(v)
                      << "  (exact " << to_string(v) << ")\n";
        std::cout << "upper bound C = " << to_string(bound) << "\n";
    }
    return 0;
}

int cmd_stratify(const Options& o) {
    HermMatrix A = load_matrix(o.matrix_path);
    auto dec = stratify(A, group_from_name(o.group));
    json j = decomposition_to_json(dec);
    j["stratum_dimension"] =
        strata_dimension(dec.partition, dec.group, A.dim());
    if (o.json_out) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "blocks = " << j["partition"].dump()
                  << "\ngroup = " << j["group"].get<std::string>()
                  << "\nstratum dimension = " << j["stratum_dimension"] << "\n";
    }
    return 0;
}

int cmd_simkernel(const Options& o) {
    HermMatrix A = load_matrix(o.matrix_path);
    HermMatrix B = o.weight_path.empty() ? A : load_matrix(o.weight_path);
    CoeffVector c(parse_rational_list(o.coeffs));
    auto kb = simultaneous_kernel(A, B, c);
    if (o.json_out) {
        std::cout << kernel_to_json(kb).dump(2) << "\n";
    } else {
        std::cout << "simultaneous kernel dimension = " << kb.dim() << " (ambient "
                  << kb.dim_ambient << ")\n";
    }
    return 0;
}

int cmd_cube(const Options& o) {
    CoeffVector c(parse_rational_list(o.coeffs));
    auto cb = cube_bounds(c, o.dim ? o.dim : c.dim(), o.extra, parse_rational(o.rho));
    if (o.json_out) {
        std::cout << json{{"eta_lower", to_string(cb.eta_lower)},
                          {"eta_upper", to_string(cb.eta_upper)},
                          {"ratio", to_double(cb.ratio)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "eta_lower = " << to_string(cb.eta_lower) << " ("
                  << to_double(cb.eta_lower) << ")\n"
                  << "eta_upper = " << to_string(cb.eta_upper) << " ("
                  << to_double(cb.eta_upper) << ")\n"
                  << "ratio = " << to_double(cb.ratio) << "\n";
    }
    return 0;
}

int cmd_schur(const Options& o) {
    Partition lam(parse_int_list(o.partition));
    Rational val;
    if (o.ones > 0) {
        val = Rational(schur_ones(lam, o.ones));
    } else {
        val = schur_eval(lam, parse_rational_list(o.points));
    }
    if (o.json_out)
        std::cout << json{{"value_exact", to_string(val)}, {"value", to_double(val)}}.dump(2)
                  << "\n";
    else
        std::cout << to_string(val) << "\n";
    return 0;
}

int cmd_verify(const Options& o) {
    json report = run_suites(o.suite, o.seed, o.trials);
    std::cout << report.dump(2) << "\n";
    return report["pass"].get<bool>() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp thresholds, critical values, and kernel structure for "
                 "entrywise polynomial maps on positive semidefinite matrices"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", o.json_out, "emit a single JSON document");
    };

    auto* th = app.add_subcommand("threshold", "sharp constant C and -1/C");
    th->add_option("--coeffs", o.coeffs, "comma-separated positive coefficients")->required();
    th->add_option("--degree", o.degree, "exponent M")->required();
    th->add_option("--dim", o.dim, "matrix dimension N (default: #coeffs)");
    th->add_option("--rho", o.rho, "domain radius");
    add_common(th);

    auto* ck = app.add_subcommand("check", "PSD verdict of f[A]");
    ck->add_option("--matrix", o.matrix_path, "matrix file (JSON or CSV)")->required();
    ck->add_option("--coeffs", o.coeffs)->required();
    ck->add_option("--extra-degree", o.extra, "exponent of the extra term");
    ck->add_option("--extra-coeff", o.extra_coeff, "coefficient of the extra term");
    add_common(ck);

    auto* cv = app.add_subcommand("critical-value", "C(c; z^M; A) for one matrix");
    cv->add_option("--matrix", o.matrix_path)->required();
    cv->add_option("--coeffs", o.coeffs)->required();
    cv->add_option("--degree", o.degree)->required();
    cv->add_flag("--exact", o.exact, "exact rational rank-one path");
    add_common(cv);

    auto* ws = app.add_subcommand("witness-sweep", "rank-one family sweep t -> value");
    ws->add_option("--coeffs", o.coeffs)->required();
    ws->add_option("--degree", o.degree)->required();
    ws->add_option("--rho", o.rho);
    ws->add_option("--tmin", o.t_min, "smallest t in the sweep");
    add_common(ws);

    auto* st = app.add_subcommand("stratify", "orbit block decomposition");
    st->add_option("--matrix", o.matrix_path)->required();
    st->add_option("--group", o.group, "trivial|modulus|full");
    add_common(st);

    auto* sk = app.add_subcommand("simkernel", "simultaneous kernel of the pencil");
    sk->add_option("--matrix", o.matrix_path)->required();
    sk->add_option("--weight", o.weight_path, "weight matrix B (default: A)");
    sk->add_option("--coeffs", o.coeffs)->required();
    add_common(sk);

    auto* cu = app.add_subcommand("cube", "admissible radius bracket");
    cu->add_option("--coeffs", o.coeffs)->required();
    cu->add_option("--dim", o.dim, "matrix dimension N (default: #coeffs)");
    cu->add_option("--extra", o.extra, "extra degree M")->required();
    cu->add_option("--rho", o.rho);
    add_common(cu);

    auto* sc = app.add_subcommand("schur", "Schur polynomial evaluation");
    sc->add_option("--partition", o.partition)->required();
    sc->add_option("--points", o.points, "comma-separated rational points");
    sc->add_option("--ones", o.ones, "evaluate at (1,...,1) of this length");
    add_common(sc);

    auto* vf = app.add_subcommand("verify", "run verification suites");
    vf->add_option("--suite", o.suite, "all|identities|transition|kernels");
    vf->add_option("--seed", o.seed, "RNG seed (default: HP_SEED or 0)");
    vf->add_option("--trials", o.trials, "instances per suite");
    add_common(vf);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (th->parsed()) return cmd_threshold(o);
        if (ck->parsed()) return cmd_check(o);
        if (cv->parsed()) return cmd_critical_value(o);
        if (ws->parsed()) return cmd_witness_sweep(o);
        if (st->parsed()) return cmd_stratify(o);
        if (sk->parsed()) return cmd_simkernel(o);
        if (cu->parsed()) return cmd_cube(o);
        if (sc->parsed()) return cmd_schur(o);
        if (vf->parsed()) return cmd_verify(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
