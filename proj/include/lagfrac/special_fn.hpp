#ifndef LAGFRAC_SPECIAL_FN_HPP
#define LAGFRAC_SPECIAL_FN_HPP

#include <span>
#include <vector>

namespace lagfrac {

// Order/degree pair for the Laguerre systems; alpha > -1, k >= 0.
struct BasisParams {
    double alpha;
    int k;
    BasisParams(double alpha_, int k_);
};

// ln Gamma(z) for z > 0.  Stirling series above z = 10, upward recursion
// below; relative accuracy ~1e-15 on (0, 1e6].
double log_gamma(double z);

// Generalized Laguerre polynomial L_k^alpha(x), three-term recurrence in k.
double laguerre_poly(int k, double alpha, double x);

// L_0^alpha(x) .. L_K^alpha(x) in one recurrence pass; out.size() == K+1.
void laguerre_poly_all(int K, double alpha, double x, std::span<double> out);

// Scaled polynomials L_k^alpha(x) e^{-x/2}, same recurrence with scaled
// seeds.  Overflow-free for all k, x of interest.
void scaled_laguerre_all(int K, double alpha, double x, std::span<double> out);

// Orthonormal Laguerre function l_k^alpha(x) = (k!/Gamma(k+alpha+1))^{1/2}
// e^{-x/2} L_k^alpha(x); orthonormal under x^alpha dx.
double laguerre_fn_l(int k, double alpha, double x);

// l_0 .. l_K at x via the normalized recurrence (magnitudes stay O(1),
// usable up to k ~ 10^6).
void laguerre_fn_l_all(int K, double alpha, double x, std::span<double> out);

// Script system: x^{alpha/2} l_k^alpha(x).  x = 0 requires alpha >= 0.
double laguerre_fn_script(int k, double alpha, double x);

// Hermite-type system psi_k^alpha(x) = sqrt(2) l_k^alpha(x^2), orthonormal
// under x^{2 alpha + 1} dx.
double psi_fn(int k, double alpha, double x);
void psi_fn_all(int K, double alpha, double x, std::span<double> out);

// Normalized Bessel J~_beta(x) = Gamma(beta+1) J_beta(x) / (x/2)^beta,
// continuous at 0 with value 1.  beta >= -1/2.
double bessel_j_normalized(double beta, double x);

// Generalized binomial A_j^t = Gamma(j+t+1)/(j! Gamma(t+1)) by the product
// recurrence A_j = A_{j-1} (t+j)/j, defined for every real t.
double binom_A(int j, double t);

// A_0^t .. A_J^t; out.size() == J+1.
void binom_A_row(double t, std::span<double> out);

} // namespace lagfrac

#endif
