#include "bcast/special_fns.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "bcast/errors.hpp"

namespace bcast {

std::uint64_t stirling2(int r, int l) {
    if (r < 0 || l < 0) throw DomainError("stirling2: negative argument");
    if (r > 25) throw GuardError("stirling2: r > 25 overflows 64-bit arithmetic");
    if (l > r) return 0;
    // row-by-row: a_l^(r) = l a_l^(r-1) + a_{l-1}^(r-1)
    std::array<std::uint64_t, 27> row{};
    row[0] = 1;
    for (int k = 1; k <= r; ++k) {
        for (int j = k; j >= 1; --j) row[j] = static_cast<std::uint64_t>(j) * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[l];
}

double phi(double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("phi: q must lie in (0,1)");
    return -std::log1p(-q);
}

double harmonic(std::int64_t n) {
    if (n < 1) throw DomainError("harmonic: n must be positive");
    double s = 0.0;
    // smallest terms first keeps the rounding error down for large n
    for (std::int64_t k = n; k >= 1; --k) s += 1.0 / static_cast<double>(k);
    return s;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v < 9e15 ? std::round(v) : v;
}

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

BinomialTail binomial_tail(std::int64_t m, std::int64_t a, double x) {
    if (a <= 0) return {1.0, 0.0};
    if (a > m) return {0.0, 1.0};
    const double lx = std::log(x);
    const double l1x = std::log1p(-x);
    auto log_term = [&](std::int64_t k) {
        return log_binomial(static_cast<double>(m), static_cast<double>(k)) + k * lx + (m - k) * l1x;
    };
    const double odds = x / (1.0 - x);
    if (static_cast<double>(a - 1) < m * x) {
        // P(W <= a-1): walk down from k = a-1, terms shrink monotonically
        double rel = 1.0, term = 1.0;
        for (std::int64_t k = a - 1; k >= 1; --k) {
            term *= static_cast<double>(k) / static_cast<double>(m - k + 1) / odds;
            rel += term;
            if (term < 1e-17 * rel) break;
        }
        double lower = std::min(1.0, std::exp(log_term(a - 1)) * rel);
        return {1.0 - lower, lower};
    }
    double rel = 1.0, term = 1.0;
    for (std::int64_t k = a; k < m; ++k) {
        term *= static_cast<double>(m - k) / static_cast<double>(k + 1) * odds;
        rel += term;
        if (term < 1e-17 * rel) break;
    }
    double upper = std::min(1.0, std::exp(log_term(a)) * rel);
    return {upper, 1.0 - upper};
}

namespace {

void check_beta(const BetaParams& p) {
    if (p.a < 1 || !(p.b > 0.0) || !(p.x > 0.0 && p.x < 1.0))
        throw DomainError("reg_inc_beta: need a >= 1, b > 0, 0 < x < 1");
}

bool integral(double b) { return b == std::floor(b) && b < 1e15; }

// Continued fraction for I_x(a,b) (modified Lentz).
double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 100000; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h;
    }
    throw NonConvergence("reg_inc_beta: continued fraction did not converge");
}

// Returns {I, 1-I}, each evaluated on the side where it is small.
std::pair<double, double> beta_cf_pair(double a, double b, double x) {
    double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        double v = std::clamp(front * beta_cf(a, b, x) / a, 0.0, 1.0);
        return {v, 1.0 - v};
    }
    double w = std::clamp(front * beta_cf(b, a, 1.0 - x) / b, 0.0, 1.0);
    return {1.0 - w, w};
}

}  // namespace

double reg_inc_beta(const BetaParams& p) {
    check_beta(p);
    if (integral(p.b)) return binomial_tail(p.a + static_cast<std::int64_t>(p.b) - 1, p.a, p.x).upper;
    return beta_cf_pair(p.a, p.b, p.x).first;
}

double reg_inc_beta_complement(const BetaParams& p) {
    check_beta(p);
    if (integral(p.b)) return binomial_tail(p.a + static_cast<std::int64_t>(p.b) - 1, p.a, p.x).lower;
    return beta_cf_pair(p.a, p.b, p.x).second;
}

double gamma_ccdf(int c, double s) {
    if (c < 1) throw DomainError("gamma_ccdf: c must be >= 1");
    if (s < 0.0) throw DomainError("gamma_ccdf: s must be >= 0");
    if (s == 0.0) return 1.0;
    // e^{-s} sum_{i<c} s^i/i!, anchored at the largest term
    int peak = static_cast<int>(std::min<double>(c - 1, std::floor(s)));
    double log_peak = -s + peak * std::log(s) - std::lgamma(peak + 1.0);
    double rel = 1.0, term = 1.0;
    for (int i = peak; i >= 1; --i) {
        term *= i / s;
        rel += term;
        if (term < 1e-18 * rel) break;
    }
    term = 1.0;
    for (int i = peak + 1; i < c; ++i) {
        term *= s / i;
        rel += term;
        if (term < 1e-18 * rel) break;
    }
    return std::min(1.0, std::exp(log_peak + std::log(rel)));
}

double gamma_cdf(int c, double s) {
    if (c < 1) throw DomainError("gamma_cdf: c must be >= 1");
    if (s <= 0.0) return 0.0;
    if (s >= c) return 1.0 - gamma_ccdf(c, s);
    // e^{-s} sum_{i>=c} s^i/i!, terms decrease since i >= c > s
    double log_first = -s + c * std::log(s) - std::lgamma(c + 1.0);
    double rel = 1.0, term = 1.0;
    for (int i = c + 1; i < c + 100000; ++i) {
        term *= s / i;
        rel += term;
        if (term < 1e-18 * rel) break;
    }
    return std::min(1.0, std::exp(log_first + std::log(rel)));
}

double gamma_ccdf_inv(int c, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("gamma_ccdf_inv: u must lie in (0,1)");
    double lo = 0.0, hi = std::max(1.0, static_cast<double>(c));
    while (gamma_ccdf(c, hi) > u) {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (gamma_ccdf(c, mid) > u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

std::vector<double> hypoexp_weights(const RateVector& rates) {
    const std::size_t c = rates.size();
    for (double l : rates)
        if (!(l > 0.0)) throw DomainError("hypoexp: rates must be positive");
    for (std::size_t k = 0; k < c; ++k)
        for (std::size_t l = k + 1; l < c; ++l)
            if (std::abs(rates[k] - rates[l]) < 1e-8 * std::max(rates[k], rates[l]))
                throw DegenerateRates("hypoexp: rates closer than relative gap 1e-8");
    std::vector<double> w(c, 1.0);
    for (std::size_t k = 0; k < c; ++k)
        for (std::size_t l = 0; l < c; ++l)
            if (l != k) w[k] *= rates[l] / (rates[l] - rates[k]);
    return w;
}

}  // namespace

double hypoexp_ccdf(const RateVector& rates, double y) {
    if (rates.empty()) throw DomainError("hypoexp: empty rate vector");
    if (y <= 0.0) return 1.0;
    auto w = hypoexp_weights(rates);
    double s = 0.0;
    for (std::size_t k = 0; k < rates.size(); ++k) s += w[k] * std::exp(-rates[k] * y);
    return std::clamp(s, 0.0, 1.0);
}

double hypoexp_cdf(const RateVector& rates, double y) {
    if (rates.empty()) throw DomainError("hypoexp: empty rate vector");
    if (y <= 0.0) return 0.0;
    auto w = hypoexp_weights(rates);
    double s = 0.0;
    for (std::size_t k = 0; k < rates.size(); ++k) s += w[k] * std::exp(-rates[k] * y);
    return std::clamp(1.0 - s, 0.0, 1.0);
}

double hypoexp_weight_mass(const RateVector& rates) {
    double m = 0.0;
    for (double w : hypoexp_weights(rates)) m += std::abs(w);
    return m;
}

double hypoexp_ccdf_uniformized(const RateVector& rates, double y) {
    if (rates.empty()) throw DomainError("hypoexp: empty rate vector");
    for (double l : rates)
        if (!(l > 0.0)) throw DomainError("hypoexp: rates must be positive");
    if (y <= 0.0) return 1.0;
    const std::size_t c = rates.size();
    const double big = *std::max_element(rates.begin(), rates.end());
    std::vector<double> p(c);
    for (std::size_t k = 0; k < c; ++k) p[k] = rates[k] / big;
    const double mu = big * y;
    const auto steps = static_cast<long>(mu + 12.0 * std::sqrt(mu) + 40.0);
    // v[k]: probability of sitting in phase k after m uniformized steps
    std::vector<double> v(c, 0.0);
    v[0] = 1.0;
    const double log_mu = std::log(mu);
    double log_w = -mu;
    double total = 0.0;
    for (long m = 0; m <= steps; ++m) {
        if (m > 0) {
            log_w += log_mu - std::log(static_cast<double>(m));
            for (std::size_t k = c; k-- > 0;) v[k] = v[k] * (1.0 - p[k]) + (k > 0 ? v[k - 1] * p[k - 1] : 0.0);
        }
        double alive = 0.0;
        for (double x : v) alive += x;
        if (alive < 1e-300) break;
        total += std::exp(log_w) * alive;
    }
    return std::clamp(total, 0.0, 1.0);
}

double gumbel_moment(int r) {
    if (r == 1) return kEulerGamma;
    if (r == 2) return kEulerGamma * kEulerGamma + kPi * kPi / 6.0;
    throw DomainError("gumbel_moment: only r = 1, 2 are supported");
}

}  // namespace bcast
