#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bcast/channel.hpp"

namespace bcast {

// Successes still required per receiver.
using TargetVector = std::vector<int>;

struct SeriesResult {
    double value;
    std::int64_t terms_used;  // number of m-terms covered past c^r
    double tail_bound;
};

// How the per-receiver CDF P(Y_j <= x) is evaluated inside the series.
enum class SeriesPath {
    Auto,
    Composition,      // sum over compositions of t into c positive parts (any d; t <= 60)
    Binomial,         // sum_t C(t-1,c-1)(1-q)^{t-c} q^c (d infinite)
    Beta,             // I_q(c, x-c+1) (d infinite; pure power when homogeneous)
    StateOccupation,  // forward recursion over the number of innovative packets held (any d)
};

std::string to_string(SeriesPath p);

// E[Y_{n:n}^r] = c^r + sum_{m >= c^r} (1 - prod_j F_j(floor(m^{1/r}))). r <= 4.
SeriesResult rlc_moment_series(const Channel& ch, int c, int r, double tol, SeriesPath path = SeriesPath::Auto);

// P(Y > x) for x = 0..xmax, Y a sum of independent Geo(row[k]).
std::vector<double> genneg_ccdf_table(const std::vector<double>& row, int xmax);

// Moments E[Y^1..Y^r] at every lattice state c <= c0.
class MomentTable {
public:
    MomentTable(TargetVector origin, int r);

    int order() const { return r_; }
    const TargetVector& origin() const { return origin_; }
    std::size_t size() const { return size_; }
    std::size_t index(const TargetVector& c) const;
    std::span<const double> at(const TargetVector& c) const;
    double mean() const { return at(origin_)[0]; }

    std::span<double> slot(std::size_t idx) { return {data_.data() + idx * r_, static_cast<std::size_t>(r_)}; }
    std::span<const double> slot(std::size_t idx) const {
        return {data_.data() + idx * r_, static_cast<std::size_t>(r_)};
    }
    const std::vector<std::size_t>& strides() const { return strides_; }

private:
    TargetVector origin_;
    int r_;
    std::size_t size_;
    std::vector<std::size_t> strides_;
    std::vector<double> data_;
};

// Lattice DP for the max delay. Receiver j with origin target c0_j uses the
// success row for blocklength c0_j, state k = c0_j - c_j + 1.
MomentTable rlc_recurrence_moments(const Channel& ch, const TargetVector& c0, int r);

// E[Y_{1:n}]: same DP, but any zero component absorbs.
double rlc_recurrence_min(const Channel& ch, const TargetVector& c0);

// 1 / min_j q_j
double per_packet_limit(const Channel& ch);

}  // namespace bcast
