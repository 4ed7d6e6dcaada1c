#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bcast/bound_interval.hpp"
#include "bcast/channel.hpp"

namespace bcast {

// CCDF t -> P(Z > t) of a nonnegative variable, with its mean.
struct TailFunction {
    std::function<double(double)> ccdf;
    double mean;
};

// E[Z_{n:n}] >= t - (t - mu) F(t)^{n-1} for iid Z_j; requires t >= mu.
double delacal_lower(const TailFunction& tail, double n, double t);

// E[Z_{n:n}] <= s + n int_s^inf CCDF(t) dt.
double ross_upper(const TailFunction& tail, double n, double s);

struct RossOptimum {
    double value;
    double s;  // solves n CCDF(s) = 1 (0 when n CCDF(0) <= 1)
};
RossOptimum ross_upper_optimized(const TailFunction& tail, double n);

// Hypo-exponential (continuous analog) moment sandwich, any field size.
// Psi_r <= E[Y^r] <= sum_s C(r,s) Psi_s c^{r-s}.
BoundInterval bounds_a1(const Channel& ch, int c, int r);
// Psi_r alone; Psi_0 = 1.
double psi_a1(const Channel& ch, int c, int r);

// Continuous interpolation W with W <= Y <= W + 1 in distribution (infinite field).
BoundInterval bounds_a2(const std::vector<double>& q, int c, int r);
double psi_tilde_a2(const std::vector<double>& q, int c, int r);
// P(W <= w) = I_q(c, w - c + 1) for w >= c
double w_tilde_cdf(double q, int c, double w);

// Closed-form iid bounds. t defaults to the Gamma r-th moment Gamma(c+r)/Gamma(c).
BoundInterval bounds_a3(double q, int c, double n, int r, std::optional<double> t = std::nullopt);
// Same upper bound; t chosen by golden-section search to maximize the lower bound.
BoundInterval bounds_a3_tuned(double q, int c, double n, int r);

// Gamma(c+r)/Gamma(c)
double gamma_moment(int c, int r);
// Lower bound numerator t - (t - G_r)(1 - Q(c, t^{1/r}))^{n-1}, unscaled.
double a3_lower_unscaled(int c, double n, int r, double t);
// u(s, n, c, r): Ross bound for the r-th power of a Gamma(c,1) maximum, closed form.
double a3_ross_closed(double s, double n, int c, int r);

// Per-packet bounds for E[Y]/c (homogeneous, infinite field):
// l(n,c)/phi(q) <= E[Y]/c <= u(n,c)/phi(q) + 1.
double per_packet_lower_tilde(double n, int c);
double per_packet_upper_tilde(double n, int c);
BoundInterval per_packet_bounds(double n, int c, double q);

// iid unit exponentials: t - (t-1)(1-e^{-t})^{n-1} <= H_n <= 1 + log n,
// lower bound evaluated at t_n = 1 + log n - log log n (t = 1 when n = 1).
double exp_example_lower(double t, double n);
double exp_example_upper(double n);
double exp_example_t(double n);

}  // namespace bcast
