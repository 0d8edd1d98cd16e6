// lagfrac: batch CLI for the Laguerre fractional-integration library.
//
// Subcommands: eval-basis, transform, fracint, kernel-bound, conv, maximal,
// multiplier, verify.  Exit codes: 0 all PASS, 1 any FAIL, 2 config/usage
// error.

#include "lagfrac/convolution.hpp"
#include "lagfrac/errors.hpp"
#include "lagfrac/expansion.hpp"
#include "lagfrac/harness.hpp"
#include "lagfrac/kernels.hpp"
#include "lagfrac/quadrature.hpp"
#include "lagfrac/report.hpp"
#include "lagfrac/special_fn.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace lagfrac;

namespace {

struct CommonOpts {
    double alpha = 0.0;
    double sigma = 0.5;
    double p = 4.0 / 3.0;
    double q = 0.0;
    double a = 0.0;
    double b = 0.0;
    int samples = 200;
    std::uint64_t seed = 42;
    std::string out = ".";
    std::string dump_rule;
    bool svg = false;
};

void add_common(CLI::App* app, CommonOpts& o) {
    app->add_option("--alpha", o.alpha, "basis/weight order alpha");
    app->add_option("--sigma", o.sigma, "fractional order sigma");
    app->add_option("--p", o.p, "Lebesgue exponent p");
    app->add_option("--q", o.q, "Lebesgue exponent q (0 = solve from the identity)");
    app->add_option("--a", o.a, "weight power a");
    app->add_option("--b", o.b, "weight power b");
    app->add_option("--samples", o.samples, "sample count");
    app->add_option("--seed", o.seed, "PRNG seed");
    app->add_option("--out", o.out, "output directory");
    app->add_option("--dump-rule", o.dump_rule, "write the main quadrature rule (node,weight CSV)");
    app->add_flag("--svg", o.svg, "emit SVG plots");
}

void maybe_dump_rule(const CommonOpts& o, const QuadratureRule& rule) {
    if (o.dump_rule.empty()) return;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < rule.size(); ++i)
        rows.push_back({rule.nodes[i], rule.weights[i]});
    write_csv(o.dump_rule, {"node", "weight"}, rows);
}

ExperimentConfig to_config(const CommonOpts& o) {
    ExperimentConfig cfg;
    cfg.alpha = o.alpha;
    cfg.sigma = o.sigma;
    cfg.p = o.p;
    cfg.q = o.q;
    cfg.a = o.a;
    cfg.b = o.b;
    cfg.sample_count = o.samples;
    cfg.seed = o.seed;
    if (o.q > 0.0) cfg.solve_for = "none";
    return cfg;
}

int run_verify(const CommonOpts& o, const std::string& which) {
    fs::create_directories(o.out);
    std::vector<std::string> names;
    if (which == "all")
        names = {"thm11", "thm22", "thm31", "lemma21", "corollary12", "remark3", "bridge"};
    else
        names = {which};

    bool all_pass = true;
    for (const std::string& name : names) {
        ExperimentConfig cfg = to_config(o);
        if (name == "thm11") cfg.theorem = Theorem::thm11;
        else if (name == "thm22") cfg.theorem = Theorem::thm22;
        else if (name == "thm31") cfg.theorem = Theorem::thm31;
        else if (name == "lemma21") cfg.theorem = Theorem::lemma21;
        else if (name == "corollary12") cfg.theorem = Theorem::corollary12;
        else if (name == "remark3") cfg.theorem = Theorem::remark3;
        else if (name == "bridge") cfg.theorem = Theorem::bridge;
        else throw ConfigError("unknown verify target: " + name);

        // experiment-appropriate defaults when the caller left them alone
        if (name == "remark3" && cfg.sigma == 0.5) cfg.sigma = 1.0;
        if ((name == "thm22") && cfg.alpha == 0.0 && cfg.p == 4.0 / 3.0) {
            cfg.alpha = 1.0;
            cfg.p = 2.0;
            cfg.sigma = 0.8;
        }
        if (name == "thm31" && cfg.q == 0.0 && cfg.a == 0.0 && cfg.b == 0.0) {
            cfg.alpha = 1.0;
            cfg.p = 2.0;
            cfg.q = 2.0;
            cfg.sigma = 0.5;
            cfg.a = 0.25;
            cfg.b = 0.25;
            cfg.solve_for = "none";
            cfg.sample_count = std::min(cfg.sample_count, 50);
        }
        if (name == "thm11" && cfg.q == 0.0) cfg.solve_for = "q";

        const VerificationReport rep = run_experiment(cfg);
        all_pass = all_pass && rep.pass;
        std::printf("[%s] %s  sup_ratio=%s  (%s)  %.2fs\n", rep.pass ? "PASS" : "FAIL",
                    name.c_str(), format_g17(rep.sup_ratio).c_str(), rep.attaining.c_str(),
                    rep.seconds);

        std::ofstream jf(fs::path(o.out) / (name + ".json"));
        jf << rep.to_json() << "\n";
        if (!rep.ratios.empty()) {
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < rep.ratios.size(); ++i)
                rows.push_back({static_cast<double>(i), rep.ratios[i]});
            write_csv((fs::path(o.out) / (name + ".csv")).string(), {"index", "ratio"}, rows);
            if (o.svg) {
                std::vector<double> xs(rep.ratios.size());
                for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
                write_svg_lines((fs::path(o.out) / (name + ".svg")).string(), name, xs,
                                {rep.ratios}, {"ratio"});
            }
        }
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laguerre-expansion fractional integration toolbox"};
    app.set_config("--config", "", "flat key=value config file (CLI flags override)");
    app.require_subcommand(1);

    CommonOpts o;

    // ---- eval-basis ----
    auto* eval = app.add_subcommand("eval-basis", "evaluate basis/special functions");
    add_common(eval, o);
    int ev_k = 0;
    double ev_x = 1.0, ev_beta = 0.0;
    std::string ev_system = "l";
    eval->add_option("--k", ev_k, "degree");
    eval->add_option("--x", ev_x, "abscissa");
    eval->add_option("--beta", ev_beta, "Bessel order");
    eval->add_option("--system", ev_system, "l | script | psi | poly | bessel");

    // ---- transform ----
    auto* trans = app.add_subcommand("transform", "analyze/synthesize round trip");
    add_common(trans, o);
    int tr_degree = 8, tr_K = 16;
    trans->add_option("--degree", tr_degree, "random E-class polynomial degree");
    trans->add_option("--K", tr_K, "truncation index");

    // ---- fracint ----
    auto* frac = app.add_subcommand("fracint", "apply I_sigma, emit coefficient CSV");
    add_common(frac, o);
    int fi_degree = 8;
    frac->add_option("--degree", fi_degree, "random E-class polynomial degree");

    // ---- kernel-bound ----
    auto* kb = app.add_subcommand("kernel-bound", "g_sigma profile and Lemma-type bound ratio");
    add_common(kb, o);
    std::string kb_method = "cesaro";
    kb->add_option("--method", kb_method, "abel | cesaro | subordinated");

    // ---- conv ----
    auto* cv = app.add_subcommand("conv", "evaluate F*G and FxG on a grid");
    add_common(cv, o);
    int cv_degree = 4, cv_points = 25;
    cv->add_option("--degree", cv_degree, "random E-class degree for F");
    cv->add_option("--points", cv_points, "grid size");

    // ---- maximal ----
    auto* mx = app.add_subcommand("maximal", "maximal function profile");
    add_common(mx, o);
    int mx_degree = 4, mx_points = 25;
    mx->add_option("--degree", mx_degree, "random E-class degree for F");
    mx->add_option("--points", mx_points, "grid size");

    // ---- multiplier ----
    auto* mult = app.add_subcommand("multiplier", "multiplier condition evaluators");
    auto* mcheck = mult->add_subcommand("check", "corollary12 / remark3 condition report");
    add_common(mcheck, o);
    std::string mc_which = "corollary12", mc_rule = "power";
    double mc_s = 2.0, mc_r = 1.0;
    int mc_N = 2;
    long mc_nmax = 1024, mc_kmax = 8192;
    mcheck->add_option("--which", mc_which, "corollary12 | remark3");
    mcheck->add_option("--rule", mc_rule, "power | alternating | gamma");
    mcheck->add_option("--s", mc_s, "fractional difference order");
    mcheck->add_option("--r", mc_r, "Lebesgue exponent r");
    mcheck->add_option("--N", mc_N, "difference order N");
    mcheck->add_option("--nmax", mc_nmax, "dyadic block cap");
    mcheck->add_option("--kmax", mc_kmax, "condition sum truncation");

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "run verification suites");
    add_common(ver, o);
    std::string ver_which = "all";
    ver->add_option("which", ver_which,
                    "thm11|thm22|thm31|lemma21|corollary12|remark3|bridge|all");

    try {
        app.parse(argc, argv);

        if (eval->parsed()) {
            double v = 0.0;
            if (ev_system == "l") v = laguerre_fn_l(ev_k, o.alpha, ev_x);
            else if (ev_system == "script") v = laguerre_fn_script(ev_k, o.alpha, ev_x);
            else if (ev_system == "psi") v = psi_fn(ev_k, o.alpha, ev_x);
            else if (ev_system == "poly") v = laguerre_poly(ev_k, o.alpha, ev_x);
            else if (ev_system == "bessel") v = bessel_j_normalized(ev_beta, ev_x);
            else throw ConfigError("unknown system: " + ev_system);
            std::printf("%s\n", format_g17(v).c_str());
            return 0;
        }

        if (trans->parsed()) {
            fs::create_directories(o.out);
            std::uint64_t st = o.seed;
            const EClassFunction f = make_random_eclass(st, tr_degree);
            const QuadratureRule rule = gauss_laguerre(200, o.alpha);
            maybe_dump_rule(o, rule);
            const LaguerreSeries s = analyze(f, o.alpha, tr_K, rule);
            double err = 0.0;
            for (double x = 0.25; x <= 12.0; x += 0.25)
                err = std::max(err, std::fabs(synthesize(s, x) - f(x)));
            std::vector<std::vector<double>> rows;
            for (int k = 0; k <= s.truncation(); ++k)
                rows.push_back({static_cast<double>(k), s.coeffs[k]});
            write_csv((fs::path(o.out) / "transform.csv").string(), {"k", "a_k"}, rows);
            std::printf("round-trip max error = %s\n", format_g17(err).c_str());
            return 0;
        }

        if (frac->parsed()) {
            fs::create_directories(o.out);
            std::uint64_t st = o.seed;
            const EClassFunction f = make_random_eclass(st, fi_degree);
            const QuadratureRule rule = gauss_laguerre(200, o.alpha);
            maybe_dump_rule(o, rule);
            const LaguerreSeries s = analyze(f, o.alpha, fi_degree, rule);
            const LaguerreSeries is = fractional_integral(s, o.sigma);
            std::vector<std::vector<double>> rows;
            for (int k = 0; k <= s.truncation(); ++k)
                rows.push_back({static_cast<double>(k), s.coeffs[k], is.coeffs[k]});
            write_csv((fs::path(o.out) / "fracint.csv").string(), {"k", "a_k", "Isigma_a_k"},
                      rows);
            std::printf("wrote %s\n", (fs::path(o.out) / "fracint.csv").string().c_str());
            return 0;
        }

        if (kb->parsed()) {
            fs::create_directories(o.out);
            GMethod method = GMethod::cesaro_sum;
            if (kb_method == "abel") method = GMethod::abel_sum;
            else if (kb_method == "cesaro") method = GMethod::cesaro_sum;
            else if (kb_method == "subordinated") method = GMethod::subordinated;
            else throw ConfigError("unknown method: " + kb_method);
            const KernelProfile prof =
                g_sigma_profile(o.alpha, o.sigma, g_sigma_default_grid(), method);
            std::vector<std::vector<double>> rows;
            std::vector<double> ratios(prof.grid.size());
            for (std::size_t i = 0; i < prof.grid.size(); ++i) {
                ratios[i] = std::fabs(prof.values[i]) *
                            std::pow(prof.grid[i], o.alpha + 1.0 - o.sigma);
                rows.push_back({prof.grid[i], prof.values[i], ratios[i]});
            }
            write_csv((fs::path(o.out) / "kernel_bound.csv").string(),
                      {"x", "g_sigma", "ratio"}, rows);
            {
                std::ofstream jf(fs::path(o.out) / "kernel_bound.json");
                double sup = 0.0, argx = 0.0;
                for (std::size_t i = 0; i < ratios.size(); ++i)
                    if (prof.converged[i] && ratios[i] > sup) {
                        sup = ratios[i];
                        argx = prof.grid[i];
                    }
                jf << "{\n  \"sup_ratio\": " << format_g17(sup)
                   << ",\n  \"argmax\": " << format_g17(argx)
                   << ",\n  \"truncation\": " << prof.truncation << ",\n  \"method\": \""
                   << to_string(prof.method) << "\"\n}\n";
                std::printf("sup_ratio=%s at x=%s\n", format_g17(sup).c_str(),
                            format_g17(argx).c_str());
            }
            if (o.svg)
                write_svg_lines((fs::path(o.out) / "kernel_bound.svg").string(),
                                "kernel bound ratio", prof.grid, {ratios}, {"|g| x^{a+1-s}"},
                                true, false);
            return 0;
        }

        if (cv->parsed()) {
            fs::create_directories(o.out);
            std::uint64_t st = o.seed;
            const EClassFunction f = make_random_eclass(st, cv_degree);
            const RadialFunction F =
                RadialFunction::schwartz([f](double y) { return f(y * y); });
            const RadialFunction G =
                RadialFunction::schwartz([](double y) { return std::exp(-0.5 * y * y); });
            const ConvScheme scheme = make_conv_scheme(o.alpha, 160);
            maybe_dump_rule(o, scheme.u_rule);
            std::vector<std::vector<double>> rows;
            std::vector<double> xs, e_vals, t_vals;
            for (int i = 0; i < cv_points; ++i) {
                const double x = 0.2 + 6.0 * i / std::max(1, cv_points - 1);
                const double ce = conv_euclid(F, G, x, o.alpha, scheme);
                const double ct = conv_twisted(F, G, x, o.alpha, scheme);
                rows.push_back({x, ce, ct});
                xs.push_back(x);
                e_vals.push_back(ce);
                t_vals.push_back(ct);
            }
            write_csv((fs::path(o.out) / "conv.csv").string(), {"x", "euclid", "twisted"},
                      rows);
            if (o.svg)
                write_svg_lines((fs::path(o.out) / "conv.svg").string(), "convolutions", xs,
                                {e_vals, t_vals}, {"F*G", "FxG"});
            std::printf("wrote %s\n", (fs::path(o.out) / "conv.csv").string().c_str());
            return 0;
        }

        if (mx->parsed()) {
            fs::create_directories(o.out);
            std::uint64_t st = o.seed;
            const EClassFunction f = make_random_eclass(st, mx_degree);
            const RadialFunction F =
                RadialFunction::schwartz([f](double y) { return f(y * y); });
            std::vector<std::vector<double>> rows;
            for (int i = 0; i < mx_points; ++i) {
                const double x = 0.2 + 6.0 * i / std::max(1, mx_points - 1);
                const MaximalResult r = maximal_fn(F, x, o.alpha);
                rows.push_back({x, r.value, r.eps});
            }
            write_csv((fs::path(o.out) / "maximal.csv").string(), {"x", "fstar", "eps"}, rows);
            std::printf("wrote %s\n", (fs::path(o.out) / "maximal.csv").string().c_str());
            return 0;
        }

        if (mcheck->parsed()) {
            ExperimentConfig cfg = to_config(o);
            cfg.multiplier_rule = mc_rule;
            cfg.s_order = mc_s;
            cfg.r_exp = mc_r;
            cfg.n_order = mc_N;
            cfg.n_max = mc_nmax;
            cfg.k_max = mc_kmax;
            cfg.theorem =
                (mc_which == "remark3") ? Theorem::remark3 : Theorem::corollary12;
            if (mc_which == "remark3" && cfg.sigma == 0.5) cfg.sigma = 1.0;
            const VerificationReport rep = run_experiment(cfg);
            std::cout << rep.to_json() << "\n";
            return rep.pass ? 0 : 1;
        }

        if (ver->parsed()) return run_verify(o, ver_which);

        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return (code == 0) ? 0 : 2; // usage/config problems map to exit 2
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
