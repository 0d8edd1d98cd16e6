#ifndef LAGFRAC_CONVOLUTION_HPP
#define LAGFRAC_CONVOLUTION_HPP

#include "lagfrac/quadrature.hpp"

#include <functional>
#include <vector>

namespace lagfrac {

enum class DecayClass { schwartz_like, compact_support, power_decay };

// Radial profile on [0, inf) with enough decay metadata to pick truncation
// domains honestly.
struct RadialFunction {
    std::function<double(double)> f;
    DecayClass decay = DecayClass::schwartz_like;
    double scale = 1.0;          // decay scale (schwartz) / support radius (compact)
    double power_exponent = 0.0; // power_decay: f ~ c x^exponent for large x

    double operator()(double x) const { return f(x); }

    static RadialFunction schwartz(std::function<double(double)> fn, double scale = 1.0);
    static RadialFunction power(std::function<double(double)> fn, double exponent,
                                double scale = 1.0);
    RadialFunction abs() const;
};

// cached theta rules (immutable after construction)
const QuadratureRule& shared_theta_rule(int n, double alpha);

// generalized Euclidean translation: tau^E_x F(y) = integral F((x,y)_theta) d nu_alpha
double translate_euclid(const RadialFunction& F, double x, double y, double alpha,
                        const QuadratureRule& th);
double translate_euclid(const RadialFunction& F, double x, double y, double alpha,
                        int theta_n = 64);

// twisted translation: the same average against J~_{alpha-1/2}(xy sin theta);
// node count escalates with xy and the result is checked for stability.
double translate_twisted(const RadialFunction& F, double x, double y, double alpha,
                         int theta_n_base = 64);

// Normalization making the psi-transform of the convolutions literal:
// kappa_alpha = 2 / Gamma(alpha+1)^2.
double conv_normalization(double alpha);

// quadrature plan for the outer (radial) integral of a convolution in u = y^2
struct ConvScheme {
    QuadratureRule u_rule;   // half-line rule; u_rule.alpha may differ from alpha
    int theta_n = 64;        // base theta nodes
    double skip_rel = 1e-14; // negligible-term cutoff on |w G|
};

ConvScheme make_conv_scheme(double alpha, int n_u = 200, double g_power_at_0 = 0.0,
                            int theta_n = 64);

// F*G(x) = kappa_alpha integral_0^inf tau^E_x F(y) G(y) d mu_alpha(y)
double conv_euclid(const RadialFunction& F, const RadialFunction& G, double x,
                   double alpha, const ConvScheme& scheme);

// F x G(x): same with the twisted translation
double conv_twisted(const RadialFunction& F, const RadialFunction& G, double x,
                    double alpha, const ConvScheme& scheme);

struct MaximalResult {
    double value = 0.0;
    double eps = 0.0; // attaining radius
};

// F*(x) = sup over dyadic eps in [2^lo, 2^hi] of
//   eps^{-(2 alpha + 2)} integral_0^eps tau^E_x(|F|) d mu_alpha
MaximalResult maximal_fn(const RadialFunction& F, double x, double alpha,
                         int m_lo = -20, int m_hi = 10, int theta_n = 48);

// V_delta f(x) = x^{2(delta-alpha-1)} integral_0^x f(y) y^{-2 delta} d mu_alpha(y);
// throws DomainError when the exponent at 0 is nonintegrable.
double hardy_V(const std::function<double(double)>& f, double x, double delta,
               double alpha, double p = 2.0);

// |V_delta f(x)| <= C x^{-(2a+2)/p} ||f||_p with C from the Hoelder step
double hardy_pointwise_constant(double delta, double alpha, double p);

// Schur bound for ||V_delta||_{p->p}
double hardy_schur_constant(double delta, double alpha, double p);

// Composite panel mesh for integrals against d mu_alpha on (0, X]: weights
// carry the x^{2 alpha + 1} factor.
struct PanelMesh {
    std::vector<double> nodes;
    std::vector<double> weights;
    double X = 0.0;
};
PanelMesh make_mu_mesh(double alpha, double X, int n_per = 16);

// H(x_i) = integral_0^Ymax E(x_i, y) f(y) d mu_alpha(y) with
// E(x,y) = integral (x,y)_theta^{2(sigma-alpha-1)} d nu_alpha, i.e.
// tau^E_x K_sigma(y).  The kernel samples are cached at build time; apply()
// is a weighted sum, so parameter scans reuse one build.  The y-quadrature
// grades toward 0 and toward the diagonal y = x_i.
class PowerKernelOperator {
public:
    PowerKernelOperator(double alpha, double sigma, std::vector<double> xs, double Ymax);

    const std::vector<double>& abscissas() const { return xs_; }
    // values of kappa_alpha * (K_sigma * f) at the abscissas
    std::vector<double> apply(const std::function<double(double)>& f) const;

private:
    double alpha_, sigma_, kappa_;
    std::vector<double> xs_;
    struct Row {
        std::vector<double> y;
        std::vector<double> wE; // weight (incl. mu factor) times kernel value
    };
    std::vector<Row> rows_;
};

} // namespace lagfrac

#endif
