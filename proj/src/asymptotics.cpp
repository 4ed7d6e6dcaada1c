#include "bcast/asymptotics.hpp"

#include <cmath>

#include "bcast/errors.hpp"
#include "bcast/rlc_delay.hpp"
#include "bcast/special_fns.hpp"

namespace bcast {

double bn_sequence(double n, int c) {
    if (!(n >= 2.0)) throw DomainError("bn_sequence: n must be >= 2");
    if (c < 1) throw DomainError("bn_sequence: c must be >= 1");
    return std::log(n) - std::lgamma(static_cast<double>(c)) + (c - 1) * std::log(std::log(n));
}

double a3_exact_moment(double n, int c, double q, int r, double tol) {
    if (!(n >= 1.0) || n != std::floor(n)) throw DomainError("receiver count must be a positive integer");
    if (n > 2e9) throw GuardError("receiver count too large");
    Channel ch = Channel::homogeneous(static_cast<int>(n), q, FieldSize::infinite());
    return rlc_moment_series(ch, c, r, tol, SeriesPath::Beta).value;
}

EvtSandwich evt_moment_sandwich(const EvtContext& ctx, double tol) {
    if (ctx.r != 1) throw DomainError("evt_moment_sandwich: only r = 1 is supported");
    const double ph = phi(ctx.q);
    BoundInterval lim{kEulerGamma, kEulerGamma + ph * ctx.c, "evt_gumbel", std::nullopt, std::nullopt};
    double exact = a3_exact_moment(ctx.n, ctx.c, ctx.q, 1, tol);
    return {lim, ph * exact - bn_sequence(ctx.n, ctx.c)};
}

double scaling_ratio(const EvtContext& ctx, double tol) {
    if (ctx.r < 1 || ctx.r > 2) throw DomainError("scaling_ratio: r must be 1 or 2");
    double exact = a3_exact_moment(ctx.n, ctx.c, ctx.q, ctx.r, tol);
    return exact * std::pow(phi(ctx.q) / bn_sequence(ctx.n, ctx.c), ctx.r);
}

double m1_rbc_approx(double n, int c, double q) {
    if (!(n >= 3.0)) throw DomainError("m1_rbc_approx: n must be >= 3");
    const double ph = phi(q);
    double lq = (bn_sequence(n, c) + (c - 1) * std::log(q / ((1.0 - q) * ph))) / ph;
    return lq + 0.5 + kEulerGamma / ph;
}

TightSequences tight_sequences(double n, int c, int r, double ytilde) {
    if (!(n >= 3.0)) throw DomainError("tight_sequences: n must be >= 3");
    if (r < 1) throw DomainError("tight_sequences: r must be >= 1");
    return {std::pow(ytilde + bn_sequence(n - 1.0, c), r), std::pow(bn_sequence(n, c), r)};
}

}  // namespace bcast
