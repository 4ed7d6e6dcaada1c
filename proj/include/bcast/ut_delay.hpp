#pragma once

#include <vector>

#include "bcast/bound_interval.hpp"

namespace bcast {

// Moment order r and per-receiver reception probabilities for X_{n:n} = max_j Geo(q_j).
struct MomentQuery {
    int r;
    std::vector<double> q;
};

// E[X^r] for X ~ Geo(q) on {1,2,...}; 1 <= r <= 10.
double geo_moment(double q, int r);

// Exact E[X_{n:n}^r] by inclusion-exclusion over the 2^n - 1 nonempty subsets.
double ut_max_moment_exact(const MomentQuery& mq);

// psi_r <= E[X_{n:n}^r] <= sum_s C(r,s) psi_s, with psi_r the r-th moment of
// the maximum of the matching exponentials.
BoundInterval ut_max_moment_bounds(const MomentQuery& mq);

// psi_r alone (psi_0 = 1).
double ut_psi(const std::vector<double>& q, int r);

struct EisenbergResult {
    double value;
    double truncated_value;  // plain sum over 0 < |k| <= K
    double residual;         // magnitude of the tail correction past K
    int K;
};

// E[X_{n:n}] for n iid Geo(q) from the Fourier-sum representation, summing
// conjugate pairs k, -k for k = 1..K and adding an integral estimate of the rest.
EisenbergResult ut_mean_eisenberg(double q, int n, int K = 1000);

}  // namespace bcast
