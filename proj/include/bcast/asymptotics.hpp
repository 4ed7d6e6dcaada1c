#pragma once

#include <cstdint>
#include <string>

#include "bcast/bound_interval.hpp"

namespace bcast {

struct EvtContext {
    double n;
    int c;
    double q;
    int r;
};

// Gumbel location for maxima of Gamma(c,1): log n - log Gamma(c) + (c-1) log log n; n >= 2.
double bn_sequence(double n, int c);

struct EvtSandwich {
    BoundInterval limit;  // [gamma, gamma + phi(q) c] for lim E[phi Y - b_n]
    double finite_value;  // phi(q) E[Y_{n:n}] - b_n at the given n
};
EvtSandwich evt_moment_sandwich(const EvtContext& ctx, double tol = 1e-10);

// E[Y_{n:n}^r] (phi(q)/b_n)^r for the homogeneous infinite-field channel.
double scaling_ratio(const EvtContext& ctx, double tol = 1e-10);

// Leading terms of the mean maximum of negative binomials; the bounded periodic
// fluctuation term is left out.
double m1_rbc_approx(double n, int c, double q);
inline const char* m1_rbc_note() { return "periodic term omitted: +-|h| unquantified"; }

struct TightSequences {
    double t_n;  // de la Cal parameter (ytilde + b_{n-1})^r
    double s_n;  // Ross parameter b_n^r
};
TightSequences tight_sequences(double n, int c, int r, double ytilde = -2.0);

// E[Y_{n:n}^r] for the homogeneous infinite-field channel via the series.
double a3_exact_moment(double n, int c, double q, int r, double tol = 1e-10);

}  // namespace bcast
