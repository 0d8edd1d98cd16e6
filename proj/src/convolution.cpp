#include "lagfrac/convolution.hpp"
#include "lagfrac/errors.hpp"
#include "lagfrac/kernels.hpp"
#include "lagfrac/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace lagfrac {

RadialFunction RadialFunction::schwartz(std::function<double(double)> fn, double scale) {
    return RadialFunction{std::move(fn), DecayClass::schwartz_like, scale, 0.0};
}

RadialFunction RadialFunction::power(std::function<double(double)> fn, double exponent,
                                     double scale) {
    return RadialFunction{std::move(fn), DecayClass::power_decay, scale, exponent};
}

RadialFunction RadialFunction::abs() const {
    auto base = f;
    RadialFunction out = *this;
    out.f = [base](double x) { return std::fabs(base(x)); };
    return out;
}

namespace {
std::map<std::pair<int, long long>, std::unique_ptr<QuadratureRule>> g_theta_cache;
std::mutex g_theta_mutex;
} // namespace

const QuadratureRule& shared_theta_rule(int n, double alpha) {
    const auto key = std::make_pair(n, static_cast<long long>(alpha * 1048576.0));
    std::lock_guard<std::mutex> lock(g_theta_mutex);
    auto it = g_theta_cache.find(key);
    if (it == g_theta_cache.end())
        it = g_theta_cache.emplace(key, std::make_unique<QuadratureRule>(theta_rule(n, alpha)))
                 .first;
    return *it->second;
}

double translate_euclid(const RadialFunction& F, double x, double y, double alpha,
                        const QuadratureRule& th) {
    if (!(alpha > -0.5)) throw DomainError("translate_euclid: require alpha > -1/2");
    const double c = nu_norm_constant(alpha);
    double s = 0.0;
    for (int i = 0; i < th.size(); ++i)
        s += th.weights[i] * F(chord(x, y, th.nodes[i]));
    return c * s;
}

double translate_euclid(const RadialFunction& F, double x, double y, double alpha,
                        int theta_n) {
    return translate_euclid(F, x, y, alpha, shared_theta_rule(theta_n, alpha));
}

namespace {

int pow2_at_least(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

double twisted_once(const RadialFunction& F, double x, double y, double alpha, int n) {
    const QuadratureRule& th = shared_theta_rule(n, alpha);
    const double c = nu_norm_constant(alpha);
    const double beta = alpha - 0.5;
    double s = 0.0;
    for (int i = 0; i < th.size(); ++i) {
        const double t = th.nodes[i];
        s += th.weights[i] * F(chord(x, y, t)) *
             bessel_j_normalized(beta, x * y * std::sin(t));
    }
    return c * s;
}

} // namespace

double translate_twisted(const RadialFunction& F, double x, double y, double alpha,
                         int theta_n_base) {
    if (!(alpha >= 0.0)) throw DomainError("translate_twisted: require alpha >= 0");
    const double xy = x * y;
    int n = pow2_at_least(std::max<int>(theta_n_base, 8 * static_cast<int>(std::ceil(xy))));
    double v = twisted_once(F, x, y, alpha, n);
    if (xy > 64.0) {
        // oscillatory regime: insist on stability under node doubling
        for (int attempt = 0; attempt < 2; ++attempt) {
            const double v2 = twisted_once(F, x, y, alpha, 2 * n);
            if (std::fabs(v2 - v) <= std::max(1e-9, 1e-8 * std::fabs(v2))) return v2;
            n *= 2;
            v = v2;
        }
        throw ConvergenceError("translate_twisted: oscillatory integral failed to stabilize at xy=" +
                               std::to_string(xy));
    }
    return v;
}

double conv_normalization(double alpha) {
    const double g = std::exp(log_gamma(alpha + 1.0));
    return 2.0 / (g * g);
}

ConvScheme make_conv_scheme(double alpha, int n_u, double g_power_at_0, int theta_n) {
    ConvScheme s;
    // absorb the kernel's u^{g_power_at_0} behavior into the rule weight
    s.u_rule = gauss_laguerre(n_u, alpha + g_power_at_0);
    s.theta_n = theta_n;
    return s;
}

namespace {

template <typename Translate>
double conv_generic(const RadialFunction& G, double x, double alpha,
                    const ConvScheme& scheme, Translate&& tau) {
    const QuadratureRule& ur = scheme.u_rule;
    const int n = ur.size();
    // mu-weighted G factor per node; tau is bounded by sup|F|, so terms with
    // negligible |w G| cannot contribute
    std::vector<double> gw(n);
    double gmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = ur.nodes[i];
        gw[i] = ur.scaled_weights[i] * std::exp(-u) * std::pow(u, alpha - ur.alpha) *
                G(std::sqrt(u));
        gmax = std::max(gmax, std::fabs(gw[i]));
    }
    const double cut = scheme.skip_rel * gmax;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        if (std::fabs(gw[i]) < cut) continue;
        s += gw[i] * tau(x, std::sqrt(ur.nodes[i]));
    }
    return 0.5 * conv_normalization(alpha) * s;
}

} // namespace

double conv_euclid(const RadialFunction& F, const RadialFunction& G, double x,
                   double alpha, const ConvScheme& scheme) {
    const QuadratureRule& th = shared_theta_rule(scheme.theta_n, alpha);
    return conv_generic(G, x, alpha, scheme, [&](double xx, double yy) {
        return translate_euclid(F, xx, yy, alpha, th);
    });
}

double conv_twisted(const RadialFunction& F, const RadialFunction& G, double x,
                    double alpha, const ConvScheme& scheme) {
    return conv_generic(G, x, alpha, scheme, [&](double xx, double yy) {
        return translate_twisted(F, xx, yy, alpha, scheme.theta_n);
    });
}

MaximalResult maximal_fn(const RadialFunction& F, double x, double alpha, int m_lo,
                         int m_hi, int theta_n) {
    if (!(alpha > -0.5)) throw DomainError("maximal_fn: require alpha > -1/2");
    const QuadratureRule& th = shared_theta_rule(theta_n, alpha);
    const RadialFunction Fa = F.abs();
    const auto integrand = [&](double y) {
        return translate_euclid(Fa, x, y, alpha, th) * std::pow(y, 2.0 * alpha + 1.0);
    };
    MaximalResult out;
    double eps = std::ldexp(1.0, m_lo);
    double acc = integrate_graded0(integrand, eps, 2.0 * alpha + 1.0);
    for (int m = m_lo; m <= m_hi; ++m) {
        const double ratio = acc * std::pow(eps, -(2.0 * alpha + 2.0));
        if (ratio > out.value) {
            out.value = ratio;
            out.eps = eps;
        }
        if (m < m_hi) {
            acc += integrate_panel(integrand, eps, 2.0 * eps, 16);
            eps *= 2.0;
        }
    }
    return out;
}

double hardy_V(const std::function<double(double)>& f, double x, double delta,
               double alpha, double p) {
    if (!(x > 0.0)) throw DomainError("hardy_V: require x > 0");
    if (p < 1.0) throw DomainError("hardy_V: require p >= 1");
    const double pw = 2.0 * alpha + 1.0 - 2.0 * delta;
    if (!(pw > -1.0))
        throw DomainError("hardy_V: divergent integral at 0 (-2 delta + 2 alpha + 1 <= -1)");
    const auto g = [&](double y) { return f(y) * std::pow(y, pw); };
    return std::pow(x, 2.0 * (delta - alpha - 1.0)) * integrate_graded0(g, x, pw);
}

double hardy_pointwise_constant(double delta, double alpha, double p) {
    const double pp = p / (p - 1.0);
    const double d = 2.0 * alpha + 2.0 - 2.0 * delta * pp;
    if (!(d > 0.0)) throw DomainError("hardy_pointwise_constant: require delta < (alpha+1)/p'");
    return std::pow(1.0 / d, 1.0 / pp);
}

double hardy_schur_constant(double delta, double alpha, double p) {
    const double d = 2.0 * alpha + 2.0 - 2.0 * delta - (2.0 * alpha + 2.0) / p;
    if (!(d > 0.0)) throw DomainError("hardy_schur_constant: require delta < (alpha+1)/p'");
    return 1.0 / d;
}

PanelMesh make_mu_mesh(double alpha, double X, int n_per) {
    PanelMesh mesh;
    mesh.X = X;
    const LegendreRef& ref = gauss_legendre_ref(n_per);
    const auto add_panel = [&](double a, double b) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < n_per; ++i) {
            const double xx = mid + half * ref.nodes[i];
            mesh.nodes.push_back(xx);
            mesh.weights.push_back(half * ref.weights[i] * std::pow(xx, 2.0 * alpha + 1.0));
        }
    };
    // graded panels on (0, min(1,X)], geometric panels beyond
    double hi = std::min(1.0, X);
    for (int j = 0; j < 18; ++j) {
        add_panel(0.5 * hi, hi);
        hi *= 0.5;
    }
    double lo = std::min(1.0, X);
    while (lo < X) {
        const double next = std::min(1.5 * lo, X);
        add_panel(lo, next);
        lo = next;
    }
    return mesh;
}

PowerKernelOperator::PowerKernelOperator(double alpha, double sigma, std::vector<double> xs,
                                         double Ymax)
    : alpha_(alpha), sigma_(sigma), kappa_(conv_normalization(alpha)), xs_(std::move(xs)) {
    if (!(alpha > -0.5)) throw DomainError("PowerKernelOperator: require alpha > -1/2");
    if (!(sigma > 0.0 && sigma < alpha + 1.0))
        throw DomainError("PowerKernelOperator: require 0 < sigma < alpha + 1");
    const double expo = sigma - alpha - 1.0;
    const int n_per = 12;
    const LegendreRef& ref = gauss_legendre_ref(n_per);
    rows_.resize(xs_.size());

    // depth of the diagonal zoom: the skipped sliver contributes
    // ~ (2^-Jdiag)^{2 sigma} relative to the local mass
    const int Jdiag = std::min(44, std::max(14, static_cast<int>(
        std::ceil(30.0 / std::max(2.0 * sigma, 0.5)))));

    for (std::size_t r = 0; r < xs_.size(); ++r) {
        const double x = xs_[r];
        Row& row = rows_[r];

        // panel edges: geometric base partition of (0, Ymax] plus a
        // two-sided zoom toward y = x; refinement by edge union keeps the
        // tiling exact, and the single panel straddling y = x is dropped
        std::vector<double> edges;
        const double e_min = Ymax * std::ldexp(1.0, -46);
        for (double e = Ymax; e > e_min; e *= 0.5) edges.push_back(e);
        edges.push_back(e_min);
        for (int j = 1; j <= Jdiag; ++j) {
            const double g = x * std::ldexp(1.0, -j);
            if (x - g > e_min) edges.push_back(x - g);
            if (x + g < Ymax) edges.push_back(x + g);
        }
        if (x < Ymax && x > e_min) edges.push_back(x);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

        const double g_min = x * std::ldexp(1.0, -Jdiag);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const double a = edges[i], b = edges[i + 1];
            if (x - g_min <= a && b <= x + g_min) continue; // singular sliver
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int q = 0; q < n_per; ++q) {
                const double y = mid + half * ref.nodes[q];
                const double w = half * ref.weights[q] * std::pow(y, 2.0 * alpha + 1.0);
                row.y.push_back(y);
                row.wE.push_back(w * theta_chord_integral(x, y, alpha, expo));
            }
        }
        // analytic head for (0, e_min): E is flat there
        const double Eh = theta_chord_integral(x, 0.5 * e_min, alpha, expo);
        row.y.push_back(0.5 * e_min);
        row.wE.push_back(Eh * std::pow(e_min, 2.0 * alpha + 2.0) / (2.0 * alpha + 2.0));
    }
}

std::vector<double> PowerKernelOperator::apply(const std::function<double(double)>& f) const {
    std::vector<double> out(xs_.size(), 0.0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Row& row = rows_[r];
        double s = 0.0;
        for (std::size_t i = 0; i < row.y.size(); ++i) s += row.wE[i] * f(row.y[i]);
        out[r] = kappa_ * s;
    }
    return out;
}

} // namespace lagfrac
