#pragma once

#include <functional>

namespace bcast {

using Integrand = std::function<double(double)>;

struct QuadOptions {
    double abs_tol = 1e-9;
    double cutoff = 1e-13;      // integrand level where the upper limit stops growing
    long max_evals = 20000000;  // NonConvergence beyond this
};

// Adaptive Simpson on [a,b].
double integrate(const Integrand& f, double a, double b, const QuadOptions& opt = {});

// Integral over [a, inf). The upper limit starts at a + scale and doubles its
// distance from a until f drops below opt.cutoff; the remainder is estimated
// from the last observed log-slope assuming exponential decay.
double integrate_to_infinity(const Integrand& f, double a, double scale, const QuadOptions& opt = {});

}  // namespace bcast
