#include "bcast/ut_delay.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include "bcast/errors.hpp"
#include "bcast/quadrature.hpp"
#include "bcast/special_fns.hpp"

namespace bcast {

namespace {

void check_query(const MomentQuery& mq) {
    if (mq.r < 1 || mq.r > 10) throw GuardError("moment order must satisfy 1 <= r <= 10");
    if (mq.q.empty() || mq.q.size() > 20) throw GuardError("receiver count must satisfy 1 <= n <= 20");
    for (double v : mq.q)
        if (!(v > 0.0 && v < 1.0)) throw DomainError("reception probabilities must lie in (0,1)");
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Unnormalized geometric moment where q may be extremely close to 1.
double geo_moment_unchecked(double q, int r) {
    double odds = 1.0 / q - 1.0;
    double s = 0.0, pw = 1.0;
    for (int l = 1; l <= r; ++l) {
        s += static_cast<double>(stirling2(r, l)) * pw * factorial(l);
        pw *= odds;
    }
    return s / q;
}

}  // namespace

double geo_moment(double q, int r) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("geo_moment: q must lie in (0,1)");
    if (r < 1 || r > 10) throw GuardError("geo_moment: need 1 <= r <= 10");
    return geo_moment_unchecked(q, r);
}

double ut_max_moment_exact(const MomentQuery& mq) {
    check_query(mq);
    const int n = static_cast<int>(mq.q.size());
    const std::uint32_t full = (1u << n);
    // prod_{j in A} (1 - q_j), built from the subset without its lowest bit
    std::vector<double> miss(full, 1.0);
    std::vector<double> bucket(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::uint32_t a = 1; a < full; ++a) {
        int low = __builtin_ctz(a);
        miss[a] = miss[a & (a - 1)] * (1.0 - mq.q[low]);
        // min over A of independent geometrics is Geo(1 - prod(1-q_j))
        bucket[__builtin_popcount(a)] += geo_moment_unchecked(1.0 - miss[a], mq.r);
    }
    double total = 0.0;
    for (int s = 1; s <= n; ++s) total += (s % 2 ? 1.0 : -1.0) * bucket[s];
    return total;
}

double ut_psi(const std::vector<double>& q, int r) {
    if (q.empty() || q.size() > 20) throw GuardError("receiver count must satisfy 1 <= n <= 20");
    if (r < 0 || r > 10) throw GuardError("moment order must satisfy 0 <= r <= 10");
    if (r == 0) return 1.0;
    const int n = static_cast<int>(q.size());
    const std::uint32_t full = (1u << n);
    std::vector<double> rate(full, 0.0);
    std::vector<double> bucket(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::uint32_t a = 1; a < full; ++a) {
        int low = __builtin_ctz(a);
        rate[a] = rate[a & (a - 1)] + phi(q[low]);
        bucket[__builtin_popcount(a)] += std::pow(rate[a], -r);
    }
    double total = 0.0;
    for (int s = 1; s <= n; ++s) total += (s % 2 ? 1.0 : -1.0) * bucket[s];
    return factorial(r) * total;
}

BoundInterval ut_max_moment_bounds(const MomentQuery& mq) {
    check_query(mq);
    std::vector<double> psi(static_cast<std::size_t>(mq.r) + 1);
    for (int s = 0; s <= mq.r; ++s) psi[s] = ut_psi(mq.q, s);
    double upper = 0.0;
    for (int s = 0; s <= mq.r; ++s) upper += binomial(mq.r, s) * psi[s];
    return {psi[mq.r], upper, "ut_psi", std::nullopt, std::nullopt};
}

EisenbergResult ut_mean_eisenberg(double q, int n, int K) {
    if (n < 1) throw DomainError("ut_mean_eisenberg: n must be >= 1");
    if (K < 1) throw DomainError("ut_mean_eisenberg: K must be >= 1");
    const double ph = phi(q);
    // pair term for k and -k, extended to real k for the tail integral
    auto pair = [&](double k) {
        const std::complex<double> i2pk(0.0, 2.0 * kPi * k);
        std::complex<double> prod = 1.0;
        for (int j = 1; j <= n; ++j) prod /= 1.0 + i2pk / (j * ph);
        return 2.0 * std::real(prod / i2pk);
    };
    double sum = 0.0;
    for (int k = K; k >= 1; --k) sum += pair(k);
    // sum_{k>K} g(k) ~ int_{K+1/2}^inf g; substitute k = (K+1/2)/u
    const double k0 = K + 0.5;
    double tail = integrate(
        [&](double u) {
            u = std::max(u, 1e-8);  // integrand tends to a finite limit at 0
            return pair(k0 / u) * k0 / (u * u);
        },
        0.0, 1.0, QuadOptions{1e-13});
    const double base = 0.5 + harmonic(n) / ph;
    return {base - sum - tail, base - sum, std::abs(tail), K};
}

}  // namespace bcast
