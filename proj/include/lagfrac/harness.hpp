#ifndef LAGFRAC_HARNESS_HPP
#define LAGFRAC_HARNESS_HPP

#include "lagfrac/expansion.hpp"
#include "lagfrac/report.hpp"

#include <cstdint>
#include <string>

namespace lagfrac {

enum class Theorem { thm11, thm22, thm31, lemma21, corollary12, remark3, dilation, bridge };

const char* to_string(Theorem t);

// One experiment's parameters.  Exponent identities can over-determine the
// tuple; solve_for names the parameter computed from the rest ("q", "sigma"
// or "p").  validate_for(theorem) throws ConfigError naming the violated
// constraint verbatim; nothing is clamped silently.
struct ExperimentConfig {
    Theorem theorem = Theorem::thm11;
    double alpha = 0.0;
    double sigma = 0.5;
    double p = 4.0 / 3.0;
    double q = 0.0; // 0 = unset
    double a = 0.0;
    double b = 0.0;
    int sample_count = 200;
    int degree = 16;
    std::uint64_t seed = 42;
    std::string solve_for = "q";
    // harness-scale knobs
    long n_max = 1024;   // corollary blocks
    long k_max = 8192;   // remark 3 truncation
    int quad_n = 400;    // half-line rule size for norms
    std::string multiplier_rule = "power"; // power | alternating | gamma
    int grid_n = 200;    // lemma21 grid size
    double s_order = 2.0; // fractional difference order (corollary12)
    double r_exp = 1.0;   // remark 3 Lebesgue exponent
    int n_order = 2;      // remark 3 difference order N

    // fills the solved-for exponent from the identity
    //   1/q = 1/p - (sigma - a - b)/(alpha + 1)
    void solve_exponent();
    void validate_for(Theorem t); // solves, then checks every constraint

    std::map<std::string, std::string> echo() const;
};

VerificationReport run_thm11(ExperimentConfig cfg);
VerificationReport run_thm22_dilation(ExperimentConfig cfg);
VerificationReport run_thm31(ExperimentConfig cfg);
VerificationReport run_lemma21(ExperimentConfig cfg);
VerificationReport run_corollary12(ExperimentConfig cfg);
VerificationReport run_remark3(ExperimentConfig cfg);
VerificationReport run_bridge(ExperimentConfig cfg);

// dispatch by cfg.theorem
VerificationReport run_experiment(ExperimentConfig cfg);

} // namespace lagfrac

#endif
