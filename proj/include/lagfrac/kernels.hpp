#ifndef LAGFRAC_KERNELS_HPP
#define LAGFRAC_KERNELS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lagfrac {

// chord distance (x,y)_theta = (x^2 + y^2 - 2xy cos theta)^{1/2}, evaluated
// in the cancellation-free form ((x-y)^2 + 4xy sin^2(theta/2))^{1/2}
double chord(double x, double y, double theta);

enum class GMethod { abel_sum, cesaro_sum, subordinated };

const char* to_string(GMethod m);

// Tabulation of g_sigma(x) = Gamma(alpha+1) sum_k (k+1)^{-sigma} L_k^alpha(x)
// e^{-x/2} on a grid, with per-point convergence flags and the truncation
// actually used.
struct KernelProfile {
    double alpha = 0.0;
    double sigma = 0.0;
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<char> converged;
    long truncation = 0;     // series-length scale parameter of the run
    GMethod method = GMethod::cesaro_sum;
    double tail_estimate = 0.0; // worst per-point convergence estimate
    bool refined = false;       // set by the harness after a doubling check
};

// 200-point logarithmic grid on [1e-4, 50]
std::vector<double> g_sigma_default_grid();

struct GPointResult {
    double value = 0.0;
    bool converged = false;
    double est = 0.0; // convergence estimate (relative)
    long terms = 0;
};

// Abel means along r = 1 - 2^{-m} with Richardson extrapolation; the ladder
// start adapts to x (damping must not distort the monotone head k < 1/x) and
// is capped by term budget, so very small x may come back unconverged.
GPointResult g_sigma_abel(double alpha, double sigma, double x, int levels = 7,
                          int m_cap = 16);

// (C, delta) means, delta = alpha + 2, evaluated at K/2 and K with one
// Richardson step in 1/K.  K0 scales like 1/x for small x.
GPointResult g_sigma_cesaro(double alpha, double sigma, double x, long K);
long g_sigma_cesaro_default_K(double alpha, double x, long K0 = 16384);

// (C, delta)-smoothed value of sum_k coef(k) L_k^alpha(x) e^{-x/2} with one
// Richardson step between truncations K/2 and K.
double cesaro_L_sum(double alpha, const std::function<double(long)>& coef, double x,
                    long K, double delta);

// Subordinated series sum_k (Delta^N (k+1)^{-sigma}) L_k^{alpha+N}(x)
// e^{-x/2}, N = ceil(alpha)+3, terms positive and absolutely convergent.
// Carries the Gamma(alpha+1) prefactor; the profile entry point rescales it
// by matching the Abel value at one reference abscissa.
GPointResult g_sigma_subordinated_raw(double alpha, double sigma, double x, long K);
long g_sigma_subordinated_default_K(double alpha, double x, long K0 = 4096);

// Stable Delta^N (k+1)^{-sigma} for k = 0..K: iterated differences for small
// k, Watson-expansion asymptotics beyond (iterated differencing loses all
// precision there).
void power_sequence_diff(double sigma, int N, long K, std::vector<double>& out);

// Profile on a grid; 0 < sigma < alpha + 1.  Cross-validates against an
// independent summation method on a subset of converged points and throws
// ConvergenceError (embedding both profiles' samples) on disagreement > 1%.
KernelProfile g_sigma_profile(double alpha, double sigma, const std::vector<double>& grid,
                              GMethod method, long truncation = 0);

struct BoundRatio {
    double sup_ratio = 0.0;
    double argmax = 0.0;
};

// sup over the grid of |g_sigma(x)| x^{alpha+1-sigma} and its location;
// rejects profiles with unconverged points.
BoundRatio kernel_bound_ratio(const KernelProfile& profile);

// Point evaluator for g_sigma built on the subordinated series, with the
// normalization matched against the Abel sum once at construction.
class GSigmaEval {
public:
    GSigmaEval(double alpha, double sigma, long K0 = 16384);
    double operator()(double x) const;
    double norm_factor() const { return norm_; }

private:
    double alpha_, sigma_;
    long K0_;
    double norm_;
};

// integral_0^pi chord(x,y,theta)^{2 expo} d nu_alpha(theta); the graded
// theta-subdivision resolves the near-diagonal singularity.  Throws
// DomainError when x == y and 2 expo + 2 alpha <= -1 (nonintegrable).
double theta_chord_integral(double x, double y, double alpha, double expo);

// K(x,y) = x^{-2b} ( integral (x,y)_theta^{2(sigma-alpha-1)} d nu_alpha ) y^{-2a}
double homogeneous_kernel(double x, double y, double alpha, double sigma, double a,
                          double b);

struct SchurResult {
    bool finite = false;
    double value = 0.0;
    std::string divergent_piece; // empty when finite
};

// integral_0^inf K(1,y) y^{-(2 alpha + 2)/p} d mu_alpha(y), split
// (0,c1) u (c1,c2) u (c2,inf); divergence detected by exponent tests, never
// by numerical blow-up.  Requires sigma = a + b (p = q case).
SchurResult schur_integral(double p, double alpha, double sigma, double a, double b,
                           double c1 = 0.5, double c2 = 2.0);

} // namespace lagfrac

#endif
