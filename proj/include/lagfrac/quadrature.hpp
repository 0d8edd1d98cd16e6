#ifndef LAGFRAC_QUADRATURE_HPP
#define LAGFRAC_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

namespace lagfrac {

enum class RuleKind { half_line_gamma_weight, theta_jacobi_weight };

// Gauss rule for one of the two weights used throughout:
//   half_line_gamma_weight : integral_0^inf f(x) x^alpha e^{-x} dx
//   theta_jacobi_weight    : integral_0^pi  f(theta) sin^{2 alpha}(theta) dtheta
// For the half-line rule, scaled_weights[i] = weights[i] e^{nodes[i]} is the
// overflow-free form (weights themselves underflow for far-out nodes at
// large n; the corresponding integrand contributions are genuinely
// negligible there).
struct QuadratureRule {
    RuleKind kind;
    double alpha;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> scaled_weights; // half-line only: w * e^{x}
    int exactness_degree;

    int size() const { return static_cast<int>(nodes.size()); }

    // sum w_i f(x_i): approximates the weighted integral of f
    double integrate_weighted(const std::function<double(double)>& f) const;

    // half-line only: sum w_i e^{x_i} g(x_i) ~ integral_0^inf g(x) x^alpha dx
    double integrate_plain(const std::function<double(double)>& g) const;
};

// n-point generalized Gauss-Laguerre rule, weight x^alpha e^{-x}, alpha > -1.
QuadratureRule gauss_laguerre(int n, double alpha);

// n-point rule on (0, pi) for sin^{2 alpha}(theta) dtheta, exact for
// trigonometric polynomials in cos(theta) up to degree 2n-1.  Realized by
// u = cos(theta) and a Gauss-Gegenbauer rule for (1-u^2)^{alpha-1/2}.
QuadratureRule theta_rule(int n, double alpha);

// Gamma(alpha+1)/(sqrt(pi) Gamma(alpha+1/2)): the constant making
// sin^{2 alpha}(theta) dtheta a probability measure (d nu_alpha).
double nu_norm_constant(double alpha);

// Reference Gauss-Legendre nodes/weights on [-1, 1], cached per n.
struct LegendreRef {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const LegendreRef& gauss_legendre_ref(int n);

// integral_a^b f, single n-point Gauss-Legendre panel
double integrate_panel(const std::function<double(double)>& f, double a, double b, int n = 16);

// integral_0^b f where f ~ c x^{power_low} near 0 (power_low > -1): geometric
// panels [b 2^{-j-1}, b 2^{-j}] graded toward 0, depth chosen so the
// discarded head is below reltol relative to the head panel scale.
double integrate_graded0(const std::function<double(double)>& f, double b,
                         double power_low, double reltol = 1e-14, int n_per = 16);

// integral_a^inf f for integrands that eventually decay at least
// exponentially: geometric panels [a 2^j, a 2^{j+1}] until three consecutive
// panels contribute below reltol relative to the accumulated value.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double reltol = 1e-15, int n_per = 24);

// || f ||_{L^p_{v(gamma)}} = ( integral_0^inf |f|^p x^gamma dx )^{1/p}.
// Uses the Gauss rule directly when gamma == rule.alpha; otherwise splits
// (0,1] with grading for the x^gamma factor and [1,inf) into geometric
// panels.  Throws DomainError for p < 1 or gamma <= -1, ConvergenceError
// naming the node on a non-finite sample.
double weighted_norm(const std::function<double(double)>& f, double p, double gamma,
                     const QuadratureRule& rule);

// || F ||_{L^p(d mu_alpha)}, d mu_alpha = x^{2 alpha + 1} dx, via u = x^2.
double mu_norm(const std::function<double(double)>& F, double p, double alpha,
               const QuadratureRule& rule);

// mu-norm for functions with a power tail F(x) ~ c x^{tail_exponent} beyond
// cutoff X: quadrature on (0, X) plus the closed-form tail with c fitted at
// X.  Requires p*tail_exponent + 2 alpha + 2 < 0.
double mu_norm_with_power_tail(const std::function<double(double)>& F, double p,
                               double alpha, double X, double tail_exponent);

} // namespace lagfrac

#endif
