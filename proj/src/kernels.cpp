#include "lagfrac/kernels.hpp"
#include "lagfrac/errors.hpp"
#include "lagfrac/quadrature.hpp"
#include "lagfrac/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lagfrac {

double chord(double x, double y, double theta) {
    if (x < 0.0 || y < 0.0) throw DomainError("chord: require x, y >= 0");
    const double s = std::sin(0.5 * theta);
    const double d = x - y;
    return std::sqrt(d * d + 4.0 * x * y * s * s);
}

const char* to_string(GMethod m) {
    switch (m) {
        case GMethod::abel_sum: return "abel_sum";
        case GMethod::cesaro_sum: return "cesaro_sum";
        case GMethod::subordinated: return "subordinated";
    }
    return "?";
}

std::vector<double> g_sigma_default_grid() {
    const int n = 200;
    std::vector<double> g(n);
    const double lo = std::log(1e-4), hi = std::log(50.0);
    for (int i = 0; i < n; ++i) g[i] = std::exp(lo + (hi - lo) * i / (n - 1.0));
    return g;
}

namespace {

void check_g_params(double alpha, double sigma) {
    if (!(alpha >= 0.0)) throw DomainError("g_sigma: require alpha >= 0");
    if (!(sigma > 0.0 && sigma < alpha + 1.0))
        throw DomainError("g_sigma: require 0 < sigma < alpha + 1");
}

// sum_k coef(k) L_k^alpha(x) e^{-x/2} by the scaled recurrence
template <typename CoefFn>
double scaled_laguerre_sum(long K, double alpha, double x, CoefFn coef) {
    const double e = std::exp(-0.5 * x);
    double p0 = e;
    double s = coef(0) * p0;
    if (K == 0) return s;
    double p1 = (alpha + 1.0 - x) * e;
    s += coef(1) * p1;
    for (long k = 1; k < K; ++k) {
        const double p2 = ((2.0 * k + 1.0 + alpha - x) * p1 - (k + alpha) * p0) / (k + 1.0);
        s += coef(k + 1) * p2;
        p0 = p1;
        p1 = p2;
    }
    return s;
}

} // namespace

GPointResult g_sigma_abel(double alpha, double sigma, double x, int levels, int m_cap) {
    check_g_params(alpha, sigma);
    if (!(x > 0.0)) throw DomainError("g_sigma_abel: require x > 0");

    // damping scale must stay below the monotone head extent ~1/x
    const int m_lo = (x >= 1.0) ? 6
                                : std::max(6, static_cast<int>(std::ceil(std::log2(4.0 / x))));
    const int m_hi = std::min(m_lo + levels - 1, m_cap);
    GPointResult out;
    if (m_hi - m_lo + 1 < 4) return out; // not enough ladder room: unconverged

    std::vector<double> diag;
    std::vector<std::vector<double>> T;
    for (int m = m_lo; m <= m_hi; ++m) {
        const double h = std::ldexp(1.0, -m);
        const double logr = std::log1p(-h);
        const long K = static_cast<long>(42.0 / h);
        const double v = scaled_laguerre_sum(K, alpha, x, [&](long k) {
            return std::pow(k + 1.0, -sigma) * std::exp(k * logr);
        });
        out.terms += K;
        // Richardson in h (ratio 2): T[j][i]
        std::vector<double> row{v};
        for (std::size_t j = 0; j < T.size(); ++j) {
            const double prev = T[j].back();
            row.push_back(row.back() + (row.back() - prev) / (std::ldexp(1.0, j + 1) - 1.0));
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j == T.size()) T.emplace_back();
            T[j].push_back(row[j]);
        }
        diag.push_back(row.back());
    }
    const double gfac = std::exp(log_gamma(alpha + 1.0));
    out.value = gfac * diag.back();
    const double d = std::fabs(diag.back() - diag[diag.size() - 2]);
    out.est = d / std::max(std::fabs(diag.back()), 1e-300);
    out.converged = out.est < 5e-3;
    return out;
}

long g_sigma_cesaro_default_K(double alpha, double x, long K0) {
    if (x >= 1.0) return K0;
    // K0 is a global multiplier: doubling it doubles the whole schedule
    const double scaled = (K0 / 16.0) * (alpha + 2.0) / x;
    return std::min<long>(1L << 23, std::max<long>(K0, static_cast<long>(scaled)));
}

double cesaro_L_sum(double alpha, const std::function<double(long)>& coef, double x,
                    long K, double delta) {
    if (K < 4) throw DomainError("cesaro_L_sum: require K >= 4");
    const long half = K / 2;
    std::vector<double> A(K + 1);
    binom_A_row(delta, A);
    const double sH = scaled_laguerre_sum(half, alpha, x, [&](long k) {
        return A[half - k] / A[half] * coef(k);
    });
    const double sF = scaled_laguerre_sum(K, alpha, x, [&](long k) {
        return A[K - k] / A[K] * coef(k);
    });
    return 2.0 * sF - sH; // one Richardson step in 1/K
}

GPointResult g_sigma_cesaro(double alpha, double sigma, double x, long K) {
    check_g_params(alpha, sigma);
    if (!(x > 0.0)) throw DomainError("g_sigma_cesaro: require x > 0");
    const double delta = alpha + 2.0; // >= alpha + 1 needed for summability
    const double gfac = std::exp(log_gamma(alpha + 1.0));
    GPointResult out;
    out.value = gfac * cesaro_L_sum(alpha, [&](long k) { return std::pow(k + 1.0, -sigma); },
                                    x, K, delta);
    out.terms = K + K / 2;
    out.converged = true;
    return out;
}

void power_sequence_diff(double sigma, int N, long K, std::vector<double>& out) {
    out.assign(K + 1, 0.0);
    const long k0 = std::min<long>(100, K);

    // small k: iterated differences (amplification (k+1)^N Gamma(s)/Gamma(s+N)
    // stays harmless here)
    {
        std::vector<double> m(k0 + N + 1);
        for (long i = 0; i < static_cast<long>(m.size()); ++i)
            m[i] = std::pow(i + 1.0, -sigma);
        for (int r = 0; r < N; ++r)
            for (std::size_t i = 0; i + 1 < m.size(); ++i) m[i] -= m[i + 1];
        for (long k = 0; k <= k0; ++k) out[k] = m[k];
    }
    if (K <= k0) return;

    // large k: Watson expansion of (1/Gamma(s)) int t^{s-1} e^{-(k+1)t}
    // (1-e^{-t})^N dt with (1-e^{-t})^N = t^N sum_j q_j t^j
    constexpr int J = 26;
    double base[J + 1];
    for (int i = 0; i <= J; ++i)
        base[i] = ((i % 2) ? -1.0 : 1.0) / std::exp(log_gamma(i + 2.0));
    std::vector<double> q(J + 1, 0.0);
    q[0] = 1.0;
    for (int r = 0; r < N; ++r) {
        std::vector<double> nq(J + 1, 0.0);
        for (int i = 0; i <= J; ++i) {
            if (q[i] == 0.0) continue;
            for (int j = 0; j + i <= J; ++j) nq[i + j] += q[i] * base[j];
        }
        q.swap(nq);
    }
    double gr[J + 1]; // Gamma(sigma+N+j)/Gamma(sigma)
    for (int j = 0; j <= J; ++j)
        gr[j] = std::exp(log_gamma(sigma + N + j) - log_gamma(sigma));
    for (long k = k0 + 1; k <= K; ++k) {
        const double inv = 1.0 / (k + 1.0);
        double acc = 0.0, p = std::pow(k + 1.0, -sigma - N);
        for (int j = 0; j <= J; ++j) {
            acc += q[j] * gr[j] * p;
            p *= inv;
        }
        out[k] = acc;
    }
}

long g_sigma_subordinated_default_K(double alpha, double x, long K0) {
    const int N = static_cast<int>(std::ceil(alpha)) + 3;
    if (x >= 1.0) return K0;
    const double scaled = (K0 / 1024.0) * 1.5 * (alpha + N + 2.0) * (alpha + N + 2.0) / x;
    return std::min<long>(1L << 23, std::max<long>(K0, static_cast<long>(scaled)));
}

GPointResult g_sigma_subordinated_raw(double alpha, double sigma, double x, long K) {
    check_g_params(alpha, sigma);
    if (!(x > 0.0)) throw DomainError("g_sigma_subordinated: require x > 0");
    const int N = static_cast<int>(std::ceil(alpha)) + 3;
    std::vector<double> d;
    power_sequence_diff(sigma, N, K, d);
    const double gfac = std::exp(log_gamma(alpha + 1.0));
    GPointResult out;
    out.value = gfac * scaled_laguerre_sum(K, alpha + N, x, [&](long k) { return d[k]; });
    out.terms = K;
    out.converged = true;
    return out;
}

namespace {

GPointResult g_point(double alpha, double sigma, double x, GMethod method, long trunc) {
    switch (method) {
        case GMethod::abel_sum:
            return g_sigma_abel(alpha, sigma, x);
        case GMethod::cesaro_sum:
            return g_sigma_cesaro(alpha, sigma, x,
                                  g_sigma_cesaro_default_K(alpha, x, trunc));
        case GMethod::subordinated:
            return g_sigma_subordinated_raw(alpha, sigma, x,
                                            g_sigma_subordinated_default_K(alpha, x, trunc));
    }
    return {};
}

} // namespace

KernelProfile g_sigma_profile(double alpha, double sigma, const std::vector<double>& grid,
                              GMethod method, long truncation) {
    check_g_params(alpha, sigma);
    if (grid.empty()) throw DomainError("g_sigma_profile: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw DomainError("g_sigma_profile: grid must be strictly increasing");

    if (truncation == 0)
        truncation = (method == GMethod::cesaro_sum) ? 16384 : 4096;

    KernelProfile prof;
    prof.alpha = alpha;
    prof.sigma = sigma;
    prof.grid = grid;
    prof.method = method;
    prof.truncation = truncation;
    prof.values.resize(grid.size());
    prof.converged.resize(grid.size());

    // subordinated normalization: match the Abel sum at one reference point
    double scale = 1.0;
    if (method == GMethod::subordinated) {
        const double xr = 1.0;
        const GPointResult ab = g_sigma_abel(alpha, sigma, xr);
        const GPointResult raw = g_sigma_subordinated_raw(alpha, sigma, xr, truncation);
        if (ab.converged && raw.value != 0.0) scale = ab.value / raw.value;
    }

    double vmax = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const GPointResult r = g_point(alpha, sigma, grid[i], method, truncation);
        prof.values[i] = scale * r.value;
        prof.converged[i] = r.converged ? 1 : 0;
        prof.tail_estimate = std::max(prof.tail_estimate, r.est);
        vmax = std::max(vmax, std::fabs(prof.values[i]));
    }

    // cross-validation against an independent summation on a sparse subset
    const GMethod check =
        (method == GMethod::subordinated) ? GMethod::cesaro_sum : GMethod::subordinated;
    const double floor = 1e-10 * vmax;
    std::ostringstream bad;
    int checked = 0, failed = 0;
    for (std::size_t i = 0; i < grid.size(); i += std::max<std::size_t>(1, grid.size() / 12)) {
        if (!prof.converged[i] || std::fabs(prof.values[i]) < floor) continue;
        const GPointResult c = g_point(alpha, sigma, grid[i], check, 0);
        if (!c.converged) continue;
        ++checked;
        const double rel = std::fabs(prof.values[i] - c.value) /
                           std::max(std::fabs(prof.values[i]), floor);
        if (rel > 0.01) {
            ++failed;
            bad << " x=" << grid[i] << " " << to_string(method) << "=" << prof.values[i]
                << " " << to_string(check) << "=" << c.value << " rel=" << rel << ";";
        }
    }
    if (failed > 0)
        throw ConvergenceError(std::string("g_sigma_profile: cross-method disagreement > 1% (") +
                               to_string(method) + " vs " + to_string(check) + "):" + bad.str());
    (void)checked;
    return prof;
}

BoundRatio kernel_bound_ratio(const KernelProfile& profile) {
    for (char c : profile.converged)
        if (!c)
            throw ConvergenceError("kernel_bound_ratio: profile has unconverged points");
    BoundRatio out;
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        const double x = profile.grid[i];
        const double r = std::fabs(profile.values[i]) *
                         std::pow(x, profile.alpha + 1.0 - profile.sigma);
        if (r > out.sup_ratio) {
            out.sup_ratio = r;
            out.argmax = x;
        }
    }
    return out;
}

GSigmaEval::GSigmaEval(double alpha, double sigma, long K0)
    : alpha_(alpha), sigma_(sigma), K0_(K0), norm_(1.0) {
    check_g_params(alpha, sigma);
    const GPointResult ab = g_sigma_abel(alpha, sigma, 1.0);
    const GPointResult raw = g_sigma_subordinated_raw(alpha, sigma, 1.0, K0);
    if (ab.converged && raw.value != 0.0) norm_ = ab.value / raw.value;
}

double GSigmaEval::operator()(double x) const {
    const long K = g_sigma_subordinated_default_K(alpha_, x, K0_);
    return norm_ * g_sigma_subordinated_raw(alpha_, sigma_, x, K).value;
}

double theta_chord_integral(double x, double y, double alpha, double expo) {
    if (!(x >= 0.0 && y >= 0.0)) throw DomainError("theta_chord_integral: require x, y >= 0");
    const double calpha = nu_norm_constant(alpha);
    const auto f = [&](double th) {
        return std::pow(chord(x, y, th), 2.0 * expo) * std::pow(std::sin(th), 2.0 * alpha);
    };
    const double s = std::max(x, y);
    if (s == 0.0) return 0.0; // chord == 0: caller's degenerate case

    const double dr = std::fabs(x - y) / s;
    if (dr == 0.0) {
        // on-diagonal: integrand ~ theta^{2 expo + 2 alpha} near 0
        const double pw = 2.0 * expo + 2.0 * alpha;
        if (!(pw > -1.0))
            throw DomainError("theta_chord_integral: nonintegrable on-diagonal singularity "
                              "(2*expo + 2*alpha <= -1)");
        return calpha * integrate_graded0(f, M_PI, pw);
    }
    // off-diagonal: graded toward 0 until the chord is dominated by |x-y|,
    // then a plain graded run on the inner piece (integrand smooth but the
    // sin^{2 alpha} factor still needs the grading for fractional alpha)
    const double theta_cut = std::min(1.0, dr);
    double acc = integrate_graded0(f, theta_cut, 2.0 * alpha);
    double lo = theta_cut;
    while (lo < M_PI) {
        const double hi = std::min(2.0 * lo, M_PI);
        acc += integrate_panel(f, lo, hi, 16);
        lo = hi;
    }
    return calpha * acc;
}

double homogeneous_kernel(double x, double y, double alpha, double sigma, double a,
                          double b) {
    if (!(x > 0.0 && y > 0.0)) throw DomainError("homogeneous_kernel: require x, y > 0");
    if (!(alpha > -0.5)) throw DomainError("homogeneous_kernel: require alpha > -1/2");
    if (!(sigma < alpha + 1.0)) throw DomainError("homogeneous_kernel: require sigma < alpha + 1");
    return std::pow(x, -2.0 * b) * theta_chord_integral(x, y, alpha, sigma - alpha - 1.0) *
           std::pow(y, -2.0 * a);
}

SchurResult schur_integral(double p, double alpha, double sigma, double a, double b,
                           double c1, double c2) {
    if (p < 1.0) throw DomainError("schur_integral: require p >= 1");
    if (std::fabs(sigma - (a + b)) > 1e-12)
        throw DomainError("schur_integral: requires sigma = a + b (the p = q case)");
    const double mexp = (2.0 * alpha + 2.0) / p;

    SchurResult out;
    // divergence is decided by exponent tests, piece by piece
    const double pw0 = 2.0 * alpha + 1.0 - 2.0 * a - mexp; // (0,c1) integrand power
    if (!(pw0 > -1.0)) {
        out.divergent_piece = "(0," + std::to_string(c1) + ") piece: a < (alpha+1)/p' violated";
        return out;
    }
    const double pwinf = 2.0 * (sigma - alpha - 1.0) - 2.0 * a - mexp + 2.0 * alpha + 1.0;
    if (!(pwinf < -1.0)) {
        out.divergent_piece =
            "(" + std::to_string(c2) + ",inf) piece: b < (alpha+1)/q violated";
        return out;
    }

    const auto f = [&](double y) {
        return homogeneous_kernel(1.0, y, alpha, sigma, a, b) *
               std::pow(y, -mexp + 2.0 * alpha + 1.0);
    };
    double acc = integrate_graded0(f, c1, pw0);

    // middle piece with the near-diagonal singularity at y = 1
    const double enear = std::min(sigma - 1.0, 0.0);
    const auto fl = [&](double t) { return f(1.0 - t); }; // t = 1 - y on (0, 1-c1)
    const auto fr = [&](double t) { return f(1.0 + t); };
    acc += integrate_graded0(fl, 1.0 - c1, enear);
    acc += integrate_graded0(fr, c2 - 1.0, enear);

    // outer piece: geometric panels then a fitted power tail
    double lo = c2;
    const double Y = 64.0;
    while (lo < Y) {
        const double hi = std::min(2.0 * lo, Y);
        acc += integrate_panel(f, lo, hi, 24);
        lo = hi;
    }
    const double cfit = f(Y) / std::pow(Y, pwinf);
    acc += cfit * std::pow(Y, pwinf + 1.0) / (-(pwinf + 1.0));

    out.finite = true;
    out.value = acc;
    return out;
}

} // namespace lagfrac
