#include "lagfrac/expansion.hpp"
#include "lagfrac/errors.hpp"
#include "lagfrac/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lagfrac {

EClassFunction::EClassFunction(std::vector<double> poly_coeffs)
    : coeffs_(std::move(poly_coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    trim();
}

void EClassFunction::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double EClassFunction::operator()(double x) const {
    double p = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) p = p * x + *it;
    return p * std::exp(-0.5 * x);
}

EClassFunction& EClassFunction::operator+=(const EClassFunction& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

EClassFunction& EClassFunction::operator*=(double c) {
    for (double& v : coeffs_) v *= c;
    trim();
    return *this;
}

EClassFunction EClassFunction::times_x() const {
    std::vector<double> out(coeffs_.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i + 1] = coeffs_[i];
    return EClassFunction(std::move(out));
}

EClassFunction EClassFunction::laguerre_l(int k, double alpha) {
    BasisParams check(alpha, k);
    // l_k = norm * L_k^alpha * e^{-x/2};
    // L_k^alpha coefficient of x^i: (-1)^i Gamma(k+a+1)/(Gamma(k-i+1) Gamma(a+i+1) i!)
    const double lognorm = 0.5 * (log_gamma(k + 1.0) - log_gamma(k + alpha + 1.0));
    std::vector<double> c(k + 1);
    for (int i = 0; i <= k; ++i) {
        const double lg = log_gamma(k + alpha + 1.0) - log_gamma(k - i + 1.0) -
                          log_gamma(alpha + i + 1.0) - log_gamma(i + 1.0);
        c[i] = ((i % 2) ? -1.0 : 1.0) * std::exp(lg + lognorm);
    }
    return EClassFunction(std::move(c));
}

EClassFunction apply_L(const EClassFunction& f, double alpha) {
    const std::vector<double>& c = f.poly();
    const int d = f.degree();
    std::vector<double> q(d + 1, 0.0);
    for (int i = 0; i <= d; ++i) {
        q[i] = c[i] * (i + 0.5 * (alpha + 1.0));
        if (i + 1 <= d) q[i] -= c[i + 1] * (i + 1.0) * (i + alpha + 1.0);
    }
    return EClassFunction(std::move(q));
}

LaguerreSeries analyze(const std::function<double(double)>& f, double alpha, int K,
                       const QuadratureRule& rule) {
    if (!(alpha > -1.0)) throw DomainError("analyze: require alpha > -1");
    if (rule.kind != RuleKind::half_line_gamma_weight)
        throw DomainError("analyze: half-line rule required");
    LaguerreSeries s;
    s.alpha = alpha;
    s.coeffs.assign(K + 1, 0.0);
    std::vector<double> lvals(K + 1);
    const bool same = std::fabs(alpha - rule.alpha) < 1e-12;
    for (int i = 0; i < rule.size(); ++i) {
        const double x = rule.nodes[i];
        const double fx = f(x);
        if (!std::isfinite(fx))
            throw ConvergenceError("analyze: non-finite sample at node x=" + std::to_string(x));
        const double w = rule.scaled_weights[i] *
                         (same ? 1.0 : std::pow(x, alpha - rule.alpha));
        laguerre_fn_l_all(K, alpha, x, lvals);
        for (int k = 0; k <= K; ++k) s.coeffs[k] += w * fx * lvals[k];
    }
    return s;
}

LaguerreSeries analyze(const EClassFunction& f, double alpha, int K,
                       const QuadratureRule& rule) {
    return analyze([&f](double x) { return f(x); }, alpha, K, rule);
}

double synthesize(const LaguerreSeries& series, double x) {
    const int K = series.truncation();
    std::vector<double> lvals(K + 1);
    laguerre_fn_l_all(K, series.alpha, x, lvals);
    double s = 0.0;
    for (int k = 0; k <= K; ++k) s += series.coeffs[k] * lvals[k];
    return s;
}

EClassFunction series_to_eclass(const LaguerreSeries& series) {
    EClassFunction out;
    for (int k = 0; k <= series.truncation(); ++k) {
        if (series.coeffs[k] == 0.0) continue;
        EClassFunction lk = EClassFunction::laguerre_l(k, series.alpha);
        lk *= series.coeffs[k];
        out += lk;
    }
    return out;
}

double MultiplierSequence::operator()(int k) const {
    switch (rule) {
        case Rule::power_sigma:
            return std::pow(k + 1.0, -sigma);
        case Rule::gamma_ratio_sigma:
            return omega_sequence(k, sigma);
        case Rule::alternating_power_sigma:
            return ((k % 2) ? -1.0 : 1.0) * std::pow(k + 1.0, -sigma);
        case Rule::custom_table:
            return (k < static_cast<int>(table.size())) ? table[k] : 0.0;
    }
    return 0.0;
}

double MultiplierSequence::tail_sup(int k) const {
    switch (rule) {
        case Rule::power_sigma:
        case Rule::alternating_power_sigma:
            // |m| nonincreasing for sigma >= 0, constant bound otherwise
            return (sigma >= 0.0) ? std::pow(k + 1.0, -sigma)
                                  : std::numeric_limits<double>::infinity();
        case Rule::gamma_ratio_sigma:
            return (sigma >= 0.0) ? omega_sequence(k, sigma)
                                  : std::numeric_limits<double>::infinity();
        case Rule::custom_table: {
            double m = 0.0;
            for (int j = k; j < static_cast<int>(table.size()); ++j)
                m = std::max(m, std::fabs(table[j]));
            return m;
        }
    }
    return 0.0;
}

MultiplierSequence MultiplierSequence::power(double sigma) {
    return MultiplierSequence{Rule::power_sigma, sigma, {}};
}
MultiplierSequence MultiplierSequence::gamma_ratio(double sigma) {
    return MultiplierSequence{Rule::gamma_ratio_sigma, sigma, {}};
}
MultiplierSequence MultiplierSequence::alternating_power(double sigma) {
    return MultiplierSequence{Rule::alternating_power_sigma, sigma, {}};
}
MultiplierSequence MultiplierSequence::custom(std::vector<double> values) {
    return MultiplierSequence{Rule::custom_table, 0.0, std::move(values)};
}

LaguerreSeries apply_multiplier(const LaguerreSeries& series, const MultiplierSequence& m) {
    LaguerreSeries out = series;
    for (int k = 0; k <= out.truncation(); ++k) out.coeffs[k] *= m(k);
    return out;
}

LaguerreSeries fractional_integral(const LaguerreSeries& series, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("fractional_integral: require sigma > 0");
    return apply_multiplier(series, MultiplierSequence::power(sigma));
}

double omega_sequence(int k, double sigma) {
    return std::exp(log_gamma(k + 1.0) - log_gamma(sigma + k + 1.0));
}

FracDiffResult fractional_difference(const MultiplierSequence& m, int k, double s,
                                     long J_max, std::optional<double> tol) {
    if (!(s > 0.0)) throw DomainError("fractional_difference: require s > 0");
    if (k < 0) throw DomainError("fractional_difference: require k >= 0");

    // custom tables vanish beyond their end: the sum is finite
    long J_cut = J_max;
    if (m.rule == MultiplierSequence::Rule::custom_table)
        J_cut = std::min<long>(J_max, std::max<long>(0, static_cast<long>(m.table.size()) - k));

    // default truncation tolerance for the early exit; an explicitly
    // requested tolerance additionally throws when unreachable
    const double stop_tol = tol ? *tol : 1e-8;

    FracDiffResult r;
    double a = 1.0; // A_j^{-s-1}
    double b = 1.0; // A_j^{-s}, partial-sum of the a's
    long j = 0;
    for (;;) {
        r.value += a * m(k + static_cast<int>(j));
        ++r.terms;
        if (j >= J_cut) break;
        // one-signed tail beyond j > s: usable bound once established
        if (j > s + 1.0 &&
            std::fabs(b) * m.tail_sup(k + static_cast<int>(j) + 1) <= stop_tol)
            break;
        ++j;
        a *= (-s - 1.0 + j) / j;
        b *= (-s + j) / j;
    }
    r.tail_bound = std::fabs(b) * m.tail_sup(k + static_cast<int>(j) + 1);
    if (m.rule == MultiplierSequence::Rule::custom_table &&
        k + j >= static_cast<long>(m.table.size()))
        r.tail_bound = 0.0;
    if (tol && r.tail_bound > *tol)
        throw TruncationError("fractional_difference: tolerance " + std::to_string(*tol) +
                                  " unreachable at J_max=" + std::to_string(J_max) +
                                  ", achieved bound " + std::to_string(r.tail_bound),
                              r.tail_bound);
    return r;
}

CorollaryRhsResult corollary_rhs(const MultiplierSequence& m, double s, double sigma,
                                 long N_max, long J_max) {
    if (N_max < 0) throw DomainError("corollary_rhs: require N_max >= 0");
    CorollaryRhsResult out;

    const long K = 2 * N_max;
    // sup-norm term: sup_k (k+1)^sigma |m_k| over the scanned range (analytic
    // value 1 for the built-in power rules; the scan approaches it)
    long scan = std::max<long>(K, 4096);
    if (m.rule == MultiplierSequence::Rule::custom_table)
        scan = std::max<long>(scan, static_cast<long>(m.table.size()));
    double sup = 0.0;
    for (long k = 0; k <= scan; ++k)
        sup = std::max(sup, std::pow(k + 1.0, sigma) * std::fabs(m(static_cast<int>(k))));
    out.sup_norm_term = sup * sup;

    // prefix sums of |(k+1)^{s+sigma} Delta^s m_k|^2 (k+1)^{-1}
    std::vector<double> prefix(K + 2, 0.0);
    for (long k = 0; k <= K; ++k) {
        const FracDiffResult d = fractional_difference(m, static_cast<int>(k), s, J_max);
        const double t = std::pow(k + 1.0, s + sigma) * d.value;
        prefix[k + 1] = prefix[k] + t * t / (k + 1.0);
    }
    for (long N = 0; N <= N_max; ++N) {
        const double block = prefix[std::min(2 * N, K) + 1] - prefix[N];
        if (block > out.block_sup) {
            out.block_sup = block;
            out.attaining_N = N;
        }
    }
    out.value = out.sup_norm_term + out.block_sup;
    return out;
}

Remark3Result remark3_condition(const MultiplierSequence& f_seq, int N, double r,
                                double alpha, long K_max) {
    if (N < 0) throw DomainError("remark3_condition: require N >= 0");
    if (r < 1.0) throw DomainError("remark3_condition: require r >= 1");
    const double rp_inv = 1.0 - 1.0 / r; // 1/r'
    const double expo = N + (alpha + 1.0) * rp_inv;
    Remark3Result out;
    for (long k = 0; k <= K_max; ++k) {
        const FracDiffResult d = fractional_difference(f_seq, static_cast<int>(k), N + 1.0);
        const double t = std::pow(k + 1.0, expo) * std::fabs(d.value);
        out.value += t;
        if (2 * k > K_max) out.tail_block += t;
    }
    return out;
}

std::uint64_t splitmix_next(std::uint64_t& state) {
    // splitmix64: fixed, implementation-independent stream
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform_real(std::uint64_t& state, double lo, double hi) {
    const double u = static_cast<double>(splitmix_next(state) >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

EClassFunction make_random_eclass(std::uint64_t& state, int degree, double lo, double hi) {
    std::vector<double> c(degree + 1);
    for (double& v : c) v = uniform_real(state, lo, hi);
    return EClassFunction(std::move(c));
}

} // namespace lagfrac
