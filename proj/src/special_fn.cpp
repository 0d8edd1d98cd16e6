#include "lagfrac/special_fn.hpp"
#include "lagfrac/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lagfrac {

BasisParams::BasisParams(double alpha_, int k_) : alpha(alpha_), k(k_) {
    if (!(alpha > -1.0))
        throw DomainError("BasisParams: require alpha > -1, got alpha=" + std::to_string(alpha_));
    if (k < 0)
        throw DomainError("BasisParams: require k >= 0, got k=" + std::to_string(k_));
}

namespace {

// Stirling coefficients B_{2n}/(2n(2n-1)).
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
};
constexpr double kHalfLog2Pi = 0.91893853320467274178; // ln(2 pi)/2

double log_gamma_stirling(double z) {
    const double zi = 1.0 / z;
    const double zi2 = zi * zi;
    double s = 0.0, p = zi;
    for (double c : kStirling) {
        s += c * p;
        p *= zi2;
    }
    return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + s;
}

} // namespace

double log_gamma(double z) {
    if (!(z > 0.0))
        throw DomainError("log_gamma: require z > 0, got z=" + std::to_string(z));
    if (z >= 10.0)
        return log_gamma_stirling(z);
    // lnG(z) = lnG(z+m) - ln(z (z+1) ... (z+m-1)), shift into z+m >= 10
    double prod = 1.0;
    double zz = z;
    while (zz < 10.0) {
        prod *= zz;
        zz += 1.0;
    }
    return log_gamma_stirling(zz) - std::log(prod);
}

double laguerre_poly(int k, double alpha, double x) {
    BasisParams check(alpha, k);
    if (x < 0.0)
        throw DomainError("laguerre_poly: require x >= 0");
    if (k == 0) return 1.0;
    if (k == 1) return alpha + 1.0 - x;
    double pm1 = 1.0;
    double p = alpha + 1.0 - x;
    for (int j = 1; j < k; ++j) {
        const double pn = ((2.0 * j + 1.0 + alpha - x) * p - (j + alpha) * pm1) / (j + 1.0);
        pm1 = p;
        p = pn;
    }
    return p;
}

void laguerre_poly_all(int K, double alpha, double x, std::span<double> out) {
    out[0] = 1.0;
    if (K == 0) return;
    out[1] = alpha + 1.0 - x;
    for (int j = 1; j < K; ++j)
        out[j + 1] = ((2.0 * j + 1.0 + alpha - x) * out[j] - (j + alpha) * out[j - 1]) / (j + 1.0);
}

void scaled_laguerre_all(int K, double alpha, double x, std::span<double> out) {
    const double e = std::exp(-0.5 * x);
    out[0] = e;
    if (K == 0) return;
    out[1] = (alpha + 1.0 - x) * e;
    for (int j = 1; j < K; ++j)
        out[j + 1] = ((2.0 * j + 1.0 + alpha - x) * out[j] - (j + alpha) * out[j - 1]) / (j + 1.0);
}

double laguerre_fn_l(int k, double alpha, double x) {
    BasisParams check(alpha, k);
    if (x < 0.0)
        throw DomainError("laguerre_fn_l: require x >= 0");
    // closed forms for k <= 1, recurrence above
    const double l0 = std::exp(-0.5 * x - 0.5 * log_gamma(alpha + 1.0));
    if (k == 0) return l0;
    double lm1 = l0;
    double l = (alpha + 1.0 - x) * l0 / std::sqrt(alpha + 1.0);
    for (int j = 1; j < k; ++j) {
        const double d = std::sqrt((j + 1.0) * (j + 1.0 + alpha));
        const double ln = ((2.0 * j + 1.0 + alpha - x) * l - std::sqrt(j * (j + alpha)) * lm1) / d;
        lm1 = l;
        l = ln;
    }
    return l;
}

void laguerre_fn_l_all(int K, double alpha, double x, std::span<double> out) {
    out[0] = std::exp(-0.5 * x - 0.5 * log_gamma(alpha + 1.0));
    if (K == 0) return;
    out[1] = (alpha + 1.0 - x) * out[0] / std::sqrt(alpha + 1.0);
    for (int j = 1; j < K; ++j) {
        const double d = std::sqrt((j + 1.0) * (j + 1.0 + alpha));
        out[j + 1] = ((2.0 * j + 1.0 + alpha - x) * out[j] - std::sqrt(j * (j + alpha)) * out[j - 1]) / d;
    }
}

double laguerre_fn_script(int k, double alpha, double x) {
    if (x < 0.0)
        throw DomainError("laguerre_fn_script: require x >= 0");
    if (x == 0.0) {
        if (alpha < 0.0)
            throw DomainError("laguerre_fn_script: x = 0 is singular for alpha < 0");
        if (alpha > 0.0) return 0.0;
        return laguerre_fn_l(k, alpha, 0.0);
    }
    return std::pow(x, 0.5 * alpha) * laguerre_fn_l(k, alpha, x);
}

double psi_fn(int k, double alpha, double x) {
    if (x < 0.0)
        throw DomainError("psi_fn: require x >= 0");
    return std::sqrt(2.0) * laguerre_fn_l(k, alpha, x * x);
}

void psi_fn_all(int K, double alpha, double x, std::span<double> out) {
    laguerre_fn_l_all(K, alpha, x * x, out);
    for (int j = 0; j <= K; ++j)
        out[j] *= std::sqrt(2.0);
}

namespace {

// Ascending series for J~_beta: sum_m (-q)^m Gamma(beta+1)/(m! Gamma(m+beta+1)),
// q = x^2/4.  Converges for all x; used below the crossover and as the
// fallback when the asymptotic branch cannot reach tolerance.
double bessel_norm_series(double beta, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 400; ++m) {
        term *= -q / (m * (m + beta));
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
    }
    return sum;
}

// Hankel asymptotic expansion with optimal truncation; returns the value and
// an error estimate (the first omitted term, amplitude units).
struct AsymResult {
    double value;
    double err;
};

AsymResult bessel_norm_asym(double beta, double x) {
    const double mu = 4.0 * beta * beta;
    double term = 1.0;
    double P = 1.0, Q = 0.0;
    double sp = 1.0, sq = 1.0; // alternating signs
    double last = 1.0;
    int k = 0;
    while (k < 40) {
        term *= (mu - (2.0 * k + 1.0) * (2.0 * k + 1.0)) / (8.0 * (k + 1.0) * x);
        if (std::fabs(term) >= std::fabs(last) && k > 2) break; // divergence onset
        last = term;
        if (k % 2 == 0) {
            Q += sq * term;
            sq = -sq;
        } else {
            P += sp * term;
            sp = -sp;
        }
        ++k;
        if (std::fabs(term) < 1e-18) break;
    }
    const double chi = x - (0.5 * beta + 0.25) * M_PI;
    const double amp = std::sqrt(2.0 / (M_PI * x));
    const double j = amp * (P * std::cos(chi) - Q * std::sin(chi));
    const double scale = std::exp(log_gamma(beta + 1.0) - beta * std::log(0.5 * x));
    return {scale * j, scale * amp * std::fabs(last)};
}

} // namespace

double bessel_j_normalized(double beta, double x) {
    if (beta < -0.5)
        throw DomainError("bessel_j_normalized: require beta >= -1/2, got beta=" + std::to_string(beta));
    if (x < 0.0)
        throw DomainError("bessel_j_normalized: require x >= 0");
    if (x == 0.0) return 1.0;
    const double crossover = 12.0 + 2.0 * std::fabs(beta);
    if (x < crossover)
        return bessel_norm_series(beta, x);
    const AsymResult r = bessel_norm_asym(beta, x);
    // For large orders just above the crossover the asymptotic series bottoms
    // out too early; the power series still converges there.
    const double amp = std::exp(log_gamma(beta + 1.0) - beta * std::log(0.5 * x)) *
                       std::sqrt(2.0 / (M_PI * x));
    if (r.err > 1e-13 * amp)
        return bessel_norm_series(beta, x);
    return r.value;
}

double binom_A(int j, double t) {
    if (j < 0)
        throw DomainError("binom_A: require j >= 0");
    double a = 1.0;
    for (int i = 1; i <= j; ++i)
        a *= (t + i) / i;
    return a;
}

void binom_A_row(double t, std::span<double> out) {
    out[0] = 1.0;
    for (std::size_t i = 1; i < out.size(); ++i)
        out[i] = out[i - 1] * (t + static_cast<double>(i)) / static_cast<double>(i);
}

} // namespace lagfrac
