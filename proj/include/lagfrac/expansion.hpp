#ifndef LAGFRAC_EXPANSION_HPP
#define LAGFRAC_EXPANSION_HPP

#include "lagfrac/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace lagfrac {

// p(x) e^{-x/2} with p a polynomial: the dense class on which every
// operator identity is exact.  Closed under addition, multiplication by x,
// differentiation and the Laguerre differential operator.
class EClassFunction {
public:
    EClassFunction() = default;
    explicit EClassFunction(std::vector<double> poly_coeffs);

    // value p(x) e^{-x/2}
    double operator()(double x) const;

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& poly() const { return coeffs_; }

    EClassFunction& operator+=(const EClassFunction& other);
    EClassFunction& operator*=(double c);
    EClassFunction times_x() const;

    // l_k^alpha as an element of E (normalized polynomial times e^{-x/2})
    static EClassFunction laguerre_l(int k, double alpha);

private:
    std::vector<double> coeffs_; // c_0..c_d, trailing zeros trimmed
    void trim();
};

// L f for f in E, alpha the basis order; exact polynomial calculus, E is
// invariant:  q = -x p'' + (x - (alpha+1)) p' + ((alpha+1)/2) p.
EClassFunction apply_L(const EClassFunction& f, double alpha);

// eigenvalue of l_k^alpha under L
inline double laguerre_eigenvalue(int k, double alpha) { return k + 0.5 * (alpha + 1.0); }

// Finite Laguerre coefficient vector against the basis {l_k^alpha}.
struct LaguerreSeries {
    double alpha = 0.0;
    std::vector<double> coeffs; // a_0..a_K

    int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
};

// a_k = integral_0^inf f(x) l_k^alpha(x) x^alpha dx, k = 0..K, by quadrature.
LaguerreSeries analyze(const std::function<double(double)>& f, double alpha, int K,
                       const QuadratureRule& rule);
LaguerreSeries analyze(const EClassFunction& f, double alpha, int K,
                       const QuadratureRule& rule);

// partial sum  sum_{k<=K} a_k l_k^alpha(x)
double synthesize(const LaguerreSeries& series, double x);

// exact E-class representative of a finite series
EClassFunction series_to_eclass(const LaguerreSeries& series);

// Multiplier symbol m_k.
struct MultiplierSequence {
    enum class Rule { power_sigma, gamma_ratio_sigma, alternating_power_sigma, custom_table };

    Rule rule = Rule::power_sigma;
    double sigma = 0.0;
    std::vector<double> table; // custom_table only; zero beyond the end

    double operator()(int k) const;
    // sup_{j >= k} |m_j| (monotone bound used for truncation tails)
    double tail_sup(int k) const;

    static MultiplierSequence power(double sigma);
    static MultiplierSequence gamma_ratio(double sigma);
    static MultiplierSequence alternating_power(double sigma);
    static MultiplierSequence custom(std::vector<double> values);
};

// coefficient-wise product m_k a_k
LaguerreSeries apply_multiplier(const LaguerreSeries& series, const MultiplierSequence& m);

// I_sigma: multiplier (k+1)^{-sigma}, sigma > 0
LaguerreSeries fractional_integral(const LaguerreSeries& series, double sigma);

// Gamma(k+1)/Gamma(sigma+k+1), the subordinated variant of (k+1)^{-sigma}
double omega_sequence(int k, double sigma);

// Fractional difference  Delta^s m_k = sum_j A_j^{-s-1} m_{k+j}.
struct FracDiffResult {
    double value = 0.0;
    double tail_bound = 0.0; // bound on the dropped tail
    long terms = 0;          // number of terms actually summed
};

// Truncated at J_max; the tail bound uses |A_J^{-s}| * sup_{j>J} |m_{k+j}|
// (exact for one-signed coefficient tails via the partial-sum identity
// sum_{j<=J} A_j^t = A_J^{t+1}).  Integer s terminates exactly.  When tol is
// given and the bound cannot be met, throws TruncationError carrying the
// achieved bound.
FracDiffResult fractional_difference(const MultiplierSequence& m, int k, double s,
                                     long J_max = 100000,
                                     std::optional<double> tol = std::nullopt);

// RHS of the dyadic-block multiplier criterion:
//   sup_k |(k+1)^sigma m_k|^2 + sup_{N<=N_max} sum_{k=N}^{2N}
//     |(k+1)^{s+sigma} Delta^s m_k|^2 (k+1)^{-1}
struct CorollaryRhsResult {
    double value = 0.0;
    double sup_norm_term = 0.0;
    double block_sup = 0.0;
    long attaining_N = 0;
};
CorollaryRhsResult corollary_rhs(const MultiplierSequence& m, double s, double sigma,
                                 long N_max, long J_max = 100000);

// sum_{k<=K_max} (k+1)^{N+(alpha+1)/r'} |Delta^{N+1} f_k|  (integer order, exact
// differences); tail_block is the contribution of k in (K_max/2, K_max].
struct Remark3Result {
    double value = 0.0;
    double tail_block = 0.0;
};
Remark3Result remark3_condition(const MultiplierSequence& f_seq, int N, double r,
                                double alpha, long K_max);

// Deterministic uniform double in [lo, hi) from a 64-bit generator state,
// independent of the standard library's distribution implementation.
double uniform_real(std::uint64_t& state, double lo, double hi);
std::uint64_t splitmix_next(std::uint64_t& state);

// Random E-class function: degree fixed, coefficients uniform in [lo, hi].
EClassFunction make_random_eclass(std::uint64_t& state, int degree,
                                  double lo = -1.0, double hi = 1.0);

} // namespace lagfrac

#endif
