#include "bcast/rlc_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "bcast/errors.hpp"
#include "bcast/quadrature.hpp"
#include "bcast/special_fns.hpp"

namespace bcast {

double delacal_lower(const TailFunction& tail, double n, double t) {
    if (!(n >= 1.0)) throw DomainError("delacal_lower: n must be >= 1");
    if (t < tail.mean) throw DomainError("delacal_lower: t must be at least the mean");
    double cdf = 1.0 - tail.ccdf(t);
    return t - (t - tail.mean) * std::pow(cdf, n - 1.0);
}

double ross_upper(const TailFunction& tail, double n, double s) {
    if (!(n >= 1.0)) throw DomainError("ross_upper: n must be >= 1");
    if (s < 0.0) throw DomainError("ross_upper: s must be >= 0");
    return s + n * integrate_to_infinity(tail.ccdf, s, std::max(1.0, tail.mean));
}

RossOptimum ross_upper_optimized(const TailFunction& tail, double n) {
    if (!(n >= 1.0)) throw DomainError("ross_upper: n must be >= 1");
    double s = 0.0;
    if (n * tail.ccdf(0.0) > 1.0) {
        double lo = 0.0, hi = std::max(1.0, tail.mean);
        while (n * tail.ccdf(hi) > 1.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e12) throw NonConvergence("ross_upper: CCDF does not reach 1/n");
        }
        for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
            double mid = 0.5 * (lo + hi);
            if (n * tail.ccdf(mid) > 1.0)
                lo = mid;
            else
                hi = mid;
        }
        s = 0.5 * (lo + hi);
    }
    return {ross_upper(tail, n, s), s};
}

namespace {

// 1 - prod_j (1 - S_j) without cancellation
double union_ccdf(const std::vector<double>& survival) {
    double log_all = 0.0;
    for (double s : survival) {
        if (s >= 1.0) return 1.0;
        log_all += std::log1p(-s);
    }
    return -std::expm1(log_all);
}

// P(Yt_j > u) for the continuous analog of receiver j.
std::function<double(double)> continuous_tail(const RateVector& rates) {
    bool equal = std::all_of(rates.begin(), rates.end(), [&](double l) { return l == rates.front(); });
    if (equal) {
        const int c = static_cast<int>(rates.size());
        const double lam = rates.front();
        return [c, lam](double u) { return gamma_ccdf(c, lam * u); };
    }
    // the closed form cancels badly when rates crowd together; switch to the
    // nonnegative uniformization sum in that case
    if (hypoexp_weight_mass(rates) > 1e6) return [rates](double u) { return hypoexp_ccdf_uniformized(rates, u); };
    return [rates](double u) { return hypoexp_ccdf(rates, u); };
}

}  // namespace

double psi_a1(const Channel& ch, int c, int r) {
    if (c < 1 || r < 0) throw DomainError("psi_a1: need c >= 1, r >= 0");
    if (r == 0) return 1.0;
    const SuccessMatrix sm(ch, c);
    std::vector<std::function<double(double)>> tails;
    double mean_max = 0.0;
    for (int j = 0; j < ch.n(); ++j) {
        auto rates = sm.rates(j);
        tails.push_back(continuous_tail(rates));
        double m = 0.0;
        for (double l : rates) m += 1.0 / l;
        mean_max = std::max(mean_max, m);
    }
    std::vector<double> surv(tails.size());
    // E[Z^r] = int_0^inf r u^{r-1} P(Z > u) du
    auto f = [&](double u) {
        for (std::size_t j = 0; j < tails.size(); ++j) surv[j] = tails[j](u);
        return r * std::pow(u, r - 1) * union_ccdf(surv);
    };
    return integrate_to_infinity(f, 0.0, mean_max);
}

BoundInterval bounds_a1(const Channel& ch, int c, int r) {
    if (r < 1) throw DomainError("bounds_a1: r must be >= 1");
    double upper = 0.0, lower = 0.0;
    for (int s = 0; s <= r; ++s) {
        double psi = psi_a1(ch, c, s);
        upper += binomial(r, s) * psi * std::pow(static_cast<double>(c), r - s);
        if (s == r) lower = psi;
    }
    return {lower, upper, "a1_hypoexp", std::nullopt, std::nullopt};
}

double w_tilde_cdf(double q, int c, double w) {
    if (w < c) return 0.0;
    return reg_inc_beta({c, w - c + 1.0, q});
}

double psi_tilde_a2(const std::vector<double>& q, int c, int r) {
    if (c < 1 || r < 0) throw DomainError("psi_tilde_a2: need c >= 1, r >= 0");
    if (r == 0) return 1.0;
    double mean_max = 0.0;
    for (double v : q) mean_max = std::max(mean_max, c / v);
    std::vector<double> surv(q.size());
    // substitute w = u^r so the integrand stays smooth
    auto f = [&](double u) {
        for (std::size_t j = 0; j < q.size(); ++j) surv[j] = reg_inc_beta_complement({c, u - c + 1.0, q[j]});
        return r * std::pow(u, r - 1) * union_ccdf(surv);
    };
    double cr = std::pow(static_cast<double>(c), r);
    return cr + integrate_to_infinity(f, c, mean_max);
}

BoundInterval bounds_a2(const std::vector<double>& q, int c, int r) {
    if (r < 1) throw DomainError("bounds_a2: r must be >= 1");
    for (double v : q)
        if (!(v > 0.0 && v < 1.0)) throw DomainError("bounds_a2: q must lie in (0,1)");
    double upper = 0.0, lower = 0.0;
    for (int s = 0; s <= r; ++s) {
        double psi = psi_tilde_a2(q, c, s);
        upper += binomial(r, s) * psi;
        if (s == r) lower = psi;
    }
    return {lower, upper, "a2_beta", std::nullopt, std::nullopt};
}

double gamma_moment(int c, int r) {
    double g = 1.0;
    for (int i = 0; i < r; ++i) g *= c + i;
    return g;
}

double a3_lower_unscaled(int c, double n, int r, double t) {
    const double g = gamma_moment(c, r);
    if (t < g) throw DomainError("bounds_a3: t must be at least Gamma(c+r)/Gamma(c)");
    double f = 1.0 - gamma_ccdf(c, std::pow(t, 1.0 / r));
    return t - (t - g) * std::pow(f, n - 1.0);
}

double a3_ross_closed(double s, double n, int c, int r) {
    if (r == 0) return 1.0;
    const double g = gamma_moment(c, r);
    const double root = std::pow(s, 1.0 / r);
    double extra = 0.0;
    if (s > 0.0) {
        // s^{(c+r-1)/r} e^{-s^{1/r}} sum_m s^{-m/r}/Gamma(c+r-m), done in logs
        for (int m = 0; m < r; ++m) {
            double lg = (c + r - 1.0 - m) / r * std::log(s) - root - std::lgamma(c + r - m + 0.0);
            extra += std::exp(lg);
        }
    }
    return s + n * ((g - s) * gamma_ccdf(c, root) + g * extra);
}

namespace {

// s*_p = (Q^{-1}(c, 1/n))^p, the root of n Q(c, s^{1/p}) = 1
double a3_upper(double q, int c, double n, int r, double* s_top) {
    const double ph = phi(q);
    const double root = n > 1.0 ? gamma_ccdf_inv(c, 1.0 / n) : 0.0;
    double upper = 0.0;
    for (int p = 0; p <= r; ++p) {
        double s = std::pow(root, p);
        if (p == r && s_top) *s_top = s;
        upper += binomial(r, p) * a3_ross_closed(s, n, c, p) * std::pow(static_cast<double>(c), r - p) / std::pow(ph, p);
    }
    return upper;
}

}  // namespace

BoundInterval bounds_a3(double q, int c, double n, int r, std::optional<double> t) {
    if (c < 1 || r < 1 || !(n >= 1.0)) throw DomainError("bounds_a3: need c >= 1, r >= 1, n >= 1");
    const double ph = phi(q);
    const double tt = t.value_or(gamma_moment(c, r));
    double s_top = 0.0;
    double upper = a3_upper(q, c, n, r, &s_top);
    double lower = a3_lower_unscaled(c, n, r, tt) / std::pow(ph, r);
    return {lower, upper, "a3_closed", s_top, tt};
}

BoundInterval bounds_a3_tuned(double q, int c, double n, int r) {
    const double g = gamma_moment(c, r);
    double hi = g;
    if (n > 1.0) hi = std::max(g, 2.0 * std::pow(gamma_ccdf_inv(c, std::min(0.5, 1e-3 / n)), r));
    auto obj = [&](double t) { return a3_lower_unscaled(c, n, r, t); };
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = g, b = hi;
    double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
    double f1 = obj(x1), f2 = obj(x2);
    for (int it = 0; it < 200 && b - a > 1e-10 * std::max(1.0, b); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = obj(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = obj(x1);
        }
    }
    double best = 0.5 * (a + b);
    if (obj(g) > obj(best)) best = g;
    auto out = bounds_a3(q, c, n, r, best);
    out.method = "a3_closed_tuned";
    return out;
}

double per_packet_lower_tilde(double n, int c) {
    if (!(n >= 1.0) || c < 1) throw DomainError("per_packet_bounds: need n >= 1, c >= 1");
    const double ln = std::log(n);
    const double t = c + std::sqrt(c * ln);
    double f = 1.0 - gamma_ccdf(c, t);
    return 1.0 + std::sqrt(ln / c) * (1.0 - std::pow(f, n - 1.0));
}

double per_packet_upper_tilde(double n, int c) {
    if (!(n >= 1.0) || c < 1) throw DomainError("per_packet_bounds: need n >= 1, c >= 1");
    return 1.0 + n / std::sqrt(2.0 * kPi * c);
}

BoundInterval per_packet_bounds(double n, int c, double q) {
    const double ph = phi(q);
    double lo = per_packet_lower_tilde(n, c) / ph;
    double up = per_packet_upper_tilde(n, c) / ph + 1.0;
    return {lo, up, "per_packet", std::nullopt, c + std::sqrt(c * std::log(n))};
}

double exp_example_lower(double t, double n) {
    if (t < 1.0) throw DomainError("exp_example_lower: t must be >= 1");
    return t - (t - 1.0) * std::pow(-std::expm1(-t), n - 1.0);
}

double exp_example_upper(double n) { return 1.0 + std::log(n); }

double exp_example_t(double n) {
    if (n <= 1.0) return 1.0;
    return std::max(1.0, 1.0 + std::log(n) - std::log(std::log(n)));
}

}  // namespace bcast
