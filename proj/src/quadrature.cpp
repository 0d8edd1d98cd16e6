#include "lagfrac/quadrature.hpp"
#include "lagfrac/errors.hpp"
#include "lagfrac/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace lagfrac {

namespace {

// Implicit-shift QL for a symmetric tridiagonal matrix.  d = diagonal,
// e = subdiagonal (e[0] unused), z = vector rotated along (pass the first
// unit vector to obtain the first components of the eigenvectors, as in the
// classical Golub-Welsch weight computation).  On return d holds ascending
// eigenvalues.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    const double eps = 2.22e-16;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (++iter > 60)
                    throw ConvergenceError("tridiag_ql: QL iteration failed to converge (n=" +
                                           std::to_string(n) + ")");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    // sort ascending, permuting z along
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n), zs(n);
    for (int i = 0; i < n; ++i) {
        ds[i] = d[idx[i]];
        zs[i] = z[idx[i]];
    }
    d.swap(ds);
    z.swap(zs);
}

} // namespace

double QuadratureRule::integrate_weighted(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
}

double QuadratureRule::integrate_plain(const std::function<double(double)>& g) const {
    if (kind != RuleKind::half_line_gamma_weight)
        throw DomainError("integrate_plain: half-line rule required");
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += scaled_weights[i] * g(nodes[i]);
    return s;
}

QuadratureRule gauss_laguerre(int n, double alpha) {
    if (n < 1) throw DomainError("gauss_laguerre: require n >= 1");
    if (!(alpha > -1.0)) throw DomainError("gauss_laguerre: require alpha > -1");

    // Jacobi matrix of the monic generalized Laguerre recurrence
    std::vector<double> d(n), e(n), z(n, 0.0);
    for (int i = 0; i < n; ++i) {
        d[i] = 2.0 * i + alpha + 1.0;
        if (i > 0) e[i] = std::sqrt(i * (i + alpha));
    }
    z[0] = 1.0;
    tridiag_ql(d, e, z);

    QuadratureRule rule;
    rule.kind = RuleKind::half_line_gamma_weight;
    rule.alpha = alpha;
    rule.exactness_degree = 2 * n - 1;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    rule.scaled_weights.resize(n);

    // Newton polish on S_n = L_n^alpha e^{-x/2}, then weights from the
    // classical closed form in scaled values:
    //   w_i e^{x_i} = [Gamma(n+alpha+1)/(n! (n+1)^2)] x_i / S_{n+1}(x_i)^2
    const double lognorm = log_gamma(n + alpha + 1.0) - log_gamma(n + 1.0);
    std::vector<double> S(n + 2);
    for (int i = 0; i < n; ++i) {
        double x = d[i];
        for (int it = 0; it < 3; ++it) {
            scaled_laguerre_all(n, alpha, x, std::span<double>(S.data(), n + 1));
            const double Sn = S[n];
            const double Sd = (n * S[n] - (n + alpha) * S[n - 1]) / x - 0.5 * S[n];
            const double dx = Sn / Sd;
            x -= dx;
            if (std::fabs(dx) < 1e-15 * x) break;
        }
        if (!(x > 0.0) || !std::isfinite(x))
            throw ConvergenceError("gauss_laguerre: node polish failed at i=" + std::to_string(i));
        scaled_laguerre_all(n + 1, alpha, x, std::span<double>(S.data(), n + 2));
        const double sw = std::exp(lognorm) * x / ((n + 1.0) * (n + 1.0) * S[n + 1] * S[n + 1]);
        rule.nodes[i] = x;
        rule.scaled_weights[i] = sw;
        rule.weights[i] = sw * std::exp(-x);
        if (!(sw > 0.0) || !std::isfinite(sw))
            throw ConvergenceError("gauss_laguerre: weight computation failed at i=" + std::to_string(i));
    }
    for (int i = 1; i < n; ++i)
        if (!(rule.nodes[i] > rule.nodes[i - 1]))
            throw ConvergenceError("gauss_laguerre: nodes not strictly increasing after polish");
    return rule;
}

double nu_norm_constant(double alpha) {
    return std::exp(log_gamma(alpha + 1.0) - log_gamma(alpha + 0.5)) / std::sqrt(M_PI);
}

QuadratureRule theta_rule(int n, double alpha) {
    if (n < 1) throw DomainError("theta_rule: require n >= 1");
    if (!(alpha > -0.5)) throw DomainError("theta_rule: require alpha > -1/2");

    // Gegenbauer weight (1-u^2)^{alpha-1/2} on (-1,1): monic recurrence has
    // zero diagonal; off-diagonal beta_1 = 1/(2 alpha + 2),
    // beta_k = k (k + 2 alpha - 1) / ((2k + 2 alpha - 2)(2k + 2 alpha)).
    std::vector<double> d(n, 0.0), e(n, 0.0), z(n, 0.0);
    for (int k = 1; k < n; ++k) {
        const double bk = (k == 1)
            ? 1.0 / (2.0 * alpha + 2.0)
            : k * (k + 2.0 * alpha - 1.0) / ((2.0 * k + 2.0 * alpha - 2.0) * (2.0 * k + 2.0 * alpha));
        e[k] = std::sqrt(bk);
    }
    z[0] = 1.0;
    tridiag_ql(d, e, z);

    const double mu0 = std::sqrt(M_PI) * std::exp(log_gamma(alpha + 0.5) - log_gamma(alpha + 1.0));

    QuadratureRule rule;
    rule.kind = RuleKind::theta_jacobi_weight;
    rule.alpha = alpha;
    rule.exactness_degree = 2 * n - 1;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // u ascending -> theta = acos(u) descending; emit ascending theta
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = std::acos(std::clamp(d[n - 1 - i], -1.0, 1.0));
        rule.weights[i] = mu0 * z[n - 1 - i] * z[n - 1 - i];
    }
    return rule;
}

namespace {
std::map<int, LegendreRef> g_legendre_cache;
std::mutex g_legendre_mutex;
} // namespace

const LegendreRef& gauss_legendre_ref(int n) {
    std::lock_guard<std::mutex> lock(g_legendre_mutex);
    auto it = g_legendre_cache.find(n);
    if (it != g_legendre_cache.end()) return it->second;

    LegendreRef ref;
    ref.nodes.resize(n);
    ref.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        ref.nodes[i] = -x;
        ref.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        ref.weights[i] = w;
        ref.weights[n - 1 - i] = w;
    }
    return g_legendre_cache.emplace(n, std::move(ref)).first->second;
}

double integrate_panel(const std::function<double(double)>& f, double a, double b, int n) {
    const LegendreRef& ref = gauss_legendre_ref(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += ref.weights[i] * f(mid + half * ref.nodes[i]);
    return s * half;
}

double integrate_graded0(const std::function<double(double)>& f, double b,
                         double power_low, double reltol, int n_per) {
    if (!(power_low > -1.0))
        throw DomainError("integrate_graded0: integrand exponent at 0 must be > -1, got " +
                          std::to_string(power_low));
    // head below b*2^{-J} scales like (2^{-J})^{power_low + 1}; it is added
    // back analytically from the local power fit, so J stays moderate
    const int J = std::min(40, std::max(8, static_cast<int>(
        std::ceil(-std::log2(reltol) / (power_low + 1.0)))));
    double s = 0.0;
    double hi = b;
    for (int j = 0; j < J; ++j) {
        const double lo = hi * 0.5;
        s += integrate_panel(f, lo, hi, n_per);
        hi = lo;
    }
    const double xm = 0.5 * hi;
    const double fm = f(xm);
    if (std::isfinite(fm) && fm != 0.0)
        s += fm / std::pow(xm, power_low) * std::pow(hi, power_low + 1.0) / (power_low + 1.0);
    return s;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double reltol, int n_per) {
    double s = 0.0;
    double lo = a;
    int quiet = 0;
    for (int j = 0; j < 64 && quiet < 3; ++j) {
        const double hi = 2.0 * lo;
        const double c = integrate_panel(f, lo, hi, n_per);
        s += c;
        quiet = (std::fabs(c) <= reltol * std::fabs(s)) ? quiet + 1 : 0;
        lo = hi;
    }
    return s;
}

namespace {

double norm_integral_split(const std::function<double(double)>& pf, double gamma) {
    // integral_0^inf pf(x) x^gamma dx with pf >= 0 decaying
    const auto g = [&](double x) { return pf(x) * std::pow(x, gamma); };
    return integrate_graded0(g, 1.0, gamma) + integrate_to_infinity(g, 1.0);
}

} // namespace

double weighted_norm(const std::function<double(double)>& f, double p, double gamma,
                     const QuadratureRule& rule) {
    if (p < 1.0) throw DomainError("weighted_norm: require p >= 1");
    if (!(gamma > -1.0)) throw DomainError("weighted_norm: require gamma > -1");
    if (rule.kind != RuleKind::half_line_gamma_weight)
        throw DomainError("weighted_norm: half-line rule required");

    double acc = 0.0;
    if (std::fabs(gamma - rule.alpha) < 1e-12) {
        for (int i = 0; i < rule.size(); ++i) {
            const double v = f(rule.nodes[i]);
            if (!std::isfinite(v))
                throw ConvergenceError("weighted_norm: non-finite integrand at node x=" +
                                       std::to_string(rule.nodes[i]));
            acc += rule.scaled_weights[i] * std::pow(std::fabs(v), p);
        }
    } else {
        const auto pf = [&](double x) {
            const double v = f(x);
            if (!std::isfinite(v))
                throw ConvergenceError("weighted_norm: non-finite integrand at node x=" +
                                       std::to_string(x));
            return std::pow(std::fabs(v), p);
        };
        acc = norm_integral_split(pf, gamma);
    }
    return std::pow(acc, 1.0 / p);
}

double mu_norm(const std::function<double(double)>& F, double p, double alpha,
               const QuadratureRule& rule) {
    // |F(x)|^p x^{2 alpha + 1} dx = (1/2) |F(sqrt(u))|^p u^alpha du
    const auto fu = [&](double u) { return F(std::sqrt(u)); };
    const double n = weighted_norm(fu, p, alpha, rule);
    return n * std::pow(0.5, 1.0 / p);
}

double mu_norm_with_power_tail(const std::function<double(double)>& F, double p,
                               double alpha, double X, double tail_exponent) {
    if (p < 1.0) throw DomainError("mu_norm_with_power_tail: require p >= 1");
    const double tail_pow = p * tail_exponent + 2.0 * alpha + 1.0;
    if (!(tail_pow < -1.0))
        throw DomainError("mu_norm_with_power_tail: tail exponent test failed, p*e+2a+1=" +
                          std::to_string(tail_pow));
    const auto g = [&](double x) {
        const double v = F(x);
        if (!std::isfinite(v))
            throw ConvergenceError("mu_norm_with_power_tail: non-finite sample at x=" +
                                   std::to_string(x));
        return std::pow(std::fabs(v), p) * std::pow(x, 2.0 * alpha + 1.0);
    };
    double acc = integrate_graded0(g, std::min(1.0, X), 2.0 * alpha + 1.0);
    // body (min(1,X), X] in geometric panels
    double lo = std::min(1.0, X);
    while (lo < X) {
        const double hi = std::min(2.0 * lo, X);
        acc += integrate_panel(g, lo, hi, 24);
        lo = hi;
    }
    // analytic tail with coefficient fitted at X
    const double c = std::fabs(F(X)) / std::pow(X, tail_exponent);
    acc += std::pow(c, p) * std::pow(X, tail_pow + 1.0) / (-(tail_pow + 1.0));
    return std::pow(acc, 1.0 / p);
}

} // namespace lagfrac
