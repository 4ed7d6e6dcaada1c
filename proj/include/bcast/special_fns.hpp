#pragma once

#include <cstdint>
#include <vector>

namespace bcast {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kPi = 3.14159265358979323846;

using RateVector = std::vector<double>;

struct BetaParams {
    int a;     // >= 1
    double b;  // > 0
    double x;  // in (0,1)
};

// Stirling number of the second kind {r brace l}; r <= 25.
std::uint64_t stirling2(int r, int l);

// -log(1-q), the exponential rate matching Geo(q) tails.
double phi(double q);

double harmonic(std::int64_t n);

// Binomial coefficient as a double (exact for moderate arguments).
double binomial(int n, int k);

// log C(n,k) for real n >= k >= 0.
double log_binomial(double n, double k);

// Regularized incomplete beta I_x(a,b). Integer b goes through the binomial
// tail P(Bin(a+b-1, x) >= a); other b through a continued fraction.
double reg_inc_beta(const BetaParams& p);

// 1 - I_x(a,b), computed without cancellation when I is close to 1.
double reg_inc_beta_complement(const BetaParams& p);

// Binomial tails for W ~ Bin(m, x): upper = P(W >= a), lower = P(W <= a-1).
// The smaller side is summed directly and the other obtained by complement.
struct BinomialTail {
    double upper;
    double lower;
};
BinomialTail binomial_tail(std::int64_t m, std::int64_t a, double x);

// Q(c,s) = P(Gamma(c,1) > s) for integer shape c.
double gamma_ccdf(int c, double s);
// P(Gamma(c,1) <= s), accurate for small s.
double gamma_cdf(int c, double s);
// s with Q(c,s) = u, by bisection to 1e-12 in s.
double gamma_ccdf_inv(int c, double u);

// Hypo-exponential CDF with pairwise distinct rates (closed form).
double hypoexp_cdf(const RateVector& rates, double y);
double hypoexp_ccdf(const RateVector& rates, double y);
// Sum of |w_k| for the closed form; large values mean heavy cancellation.
double hypoexp_weight_mass(const RateVector& rates);
// Same CCDF by uniformization of the phase-type chain. All terms are
// nonnegative so this works for any rates, including repeated ones.
double hypoexp_ccdf_uniformized(const RateVector& rates, double y);

// (-1)^r Gamma^{(r)}(1) for r in {1,2}.
double gumbel_moment(int r);

}  // namespace bcast
