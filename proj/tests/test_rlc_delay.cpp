#include <doctest.h>

#include <cmath>
#include <random>

#include "bcast/errors.hpp"
#include "bcast/rlc_delay.hpp"

using namespace bcast;

namespace {

// NegBin(c,q) pmf summed directly; independent of the library tails
double negbin_cdf(int c, double q, int x) {
    double total = 0.0;
    for (int t = c; t <= x; ++t)
        total += std::exp(std::lgamma(t) - std::lgamma(c) - std::lgamma(t - c + 1.0) + c * std::log(q) +
                          (t - c) * std::log1p(-q));
    return total;
}

double brute_max_negbin(const std::vector<double>& q, int c, int r) {
    double prev = 0.0, total = 0.0;
    for (int x = 1; x < 5000; ++x) {
        double f = 1.0;
        for (double v : q) f *= negbin_cdf(c, v, x);
        total += std::pow(x, r) * (f - prev);
        prev = f;
        if (1.0 - f < 1e-16 && x > 10 * c) break;
    }
    return total;
}

}  // namespace

TEST_CASE("single receiver means") {
    Channel ch({0.4}, FieldSize::infinite());
    for (int c = 1; c <= 5; ++c) {
        CHECK(rlc_moment_series(ch, c, 1, 1e-12).value == doctest::Approx(c / 0.4).epsilon(1e-9));
        TargetVector c0{c};
        CHECK(rlc_recurrence_moments(ch, c0, 1).mean() == doctest::Approx(c / 0.4).epsilon(1e-12));
    }
    // finite field: sum of geometric means over the success row
    Channel f({0.6}, FieldSize::finite(2));
    auto row = success_row(0.6, FieldSize::finite(2), 4);
    double expected = 0.0;
    for (double p : row) expected += 1.0 / p;
    CHECK(rlc_recurrence_moments(f, {4}, 1).mean() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(rlc_moment_series(f, 4, 1, 1e-12).value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("series and recurrence against a direct NegBin oracle") {
    for (const auto& q : std::vector<std::vector<double>>{{0.5, 0.5}, {0.3, 0.8}, {0.6, 0.7, 0.9}})
        for (int c : {1, 2, 4})
            for (int r : {1, 2}) {
                Channel ch(q, FieldSize::infinite());
                double oracle = brute_max_negbin(q, c, r);
                TargetVector c0(q.size(), c);
                CHECK(rlc_recurrence_moments(ch, c0, r).at(c0)[r - 1] == doctest::Approx(oracle).epsilon(1e-9));
                for (auto p : {SeriesPath::Auto, SeriesPath::Composition, SeriesPath::Binomial, SeriesPath::Beta})
                    CHECK(rlc_moment_series(ch, c, r, 1e-11, p).value == doctest::Approx(oracle).epsilon(1e-8));
            }
}

TEST_CASE("finite-field series paths agree with the recurrence") {
    Channel ch({0.5, 0.75}, FieldSize::finite(2));
    for (int c = 1; c <= 3; ++c) {
        TargetVector c0(2, c);
        double rec = rlc_recurrence_moments(ch, c0, 2).at(c0)[1];
        CHECK(rlc_moment_series(ch, c, 2, 1e-11, SeriesPath::Composition).value == doctest::Approx(rec).epsilon(1e-9));
        CHECK(rlc_moment_series(ch, c, 2, 1e-11, SeriesPath::StateOccupation).value ==
              doctest::Approx(rec).epsilon(1e-9));
    }
    CHECK_THROWS_AS(rlc_moment_series(ch, 2, 1, 1e-10, SeriesPath::Beta), DomainError);
}

TEST_CASE("tail bound and large homogeneous n") {
    Channel ch = Channel::homogeneous(100000, 0.5, FieldSize::infinite());
    auto s = rlc_moment_series(ch, 2, 1, 1e-10);
    CHECK(s.value > 2.0 / 0.5);
    CHECK(s.tail_bound >= 0.0);
    CHECK(s.tail_bound < 1e-6);
}

TEST_CASE("min variant") {
    Channel ch({0.3, 0.6}, FieldSize::infinite());
    // min of independent NegBin(1,q) is Geo(1-(1-q1)(1-q2))
    CHECK(rlc_recurrence_min(ch, {1, 1}) == doctest::Approx(1.0 / (1.0 - 0.7 * 0.4)).epsilon(1e-12));
    double direct = 0.0;
    for (int x = 0; x < 3000; ++x) direct += (1.0 - negbin_cdf(3, 0.3, x)) * (1.0 - negbin_cdf(3, 0.6, x));
    CHECK(rlc_recurrence_min(ch, {3, 3}) == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("moment table indexing") {
    MomentTable t({2, 3}, 2);
    CHECK(t.size() == 12);
    CHECK(t.index({0, 0}) == 0);
    CHECK(t.index({2, 3}) == 11);
    Channel big = Channel::homogeneous(8, 0.5, FieldSize::infinite());
    CHECK_THROWS_AS(rlc_recurrence_moments(big, TargetVector(8, 9), 1), GuardError);
}

TEST_CASE("per-packet limit") {
    CHECK(per_packet_limit(Channel({0.3, 0.8}, FieldSize::infinite())) == doctest::Approx(1 / 0.3));
    CHECK(per_packet_limit(Channel({0.5}, FieldSize::finite(2))) == doctest::Approx(2.0));
}

TEST_CASE("per-packet delay is not stochastically ordered in c") {
    // n = 1, q = 0.5: compare Y(1)/1 and Y(2)/2 on a grid of thresholds
    const double q = 0.5;
    auto ccdf1 = [&](double y) { return 1.0 - negbin_cdf(1, q, static_cast<int>(std::floor(y))); };
    auto ccdf2 = [&](double y) { return 1.0 - negbin_cdf(2, q, static_cast<int>(std::floor(2.0 * y))); };
    bool first_above = false, second_above = false;
    for (double y = 0.0; y < 20.0; y += 0.25) {
        double d = ccdf1(y) - ccdf2(y);
        if (d > 1e-12) first_above = true;
        if (d < -1e-12) second_above = true;
    }
    CHECK(first_above);
    CHECK(second_above);
}

TEST_CASE("homogeneous channel minimizes the RLC moment at fixed mean") {
    std::mt19937_64 gen(77);
    for (int c = 1; c <= 3; ++c)
        for (int r = 1; r <= 2; ++r) {
            const double mean = 0.5;
            TargetVector c0(3, c);
            double homog = rlc_recurrence_moments(Channel::homogeneous(3, mean, FieldSize::infinite()), c0, r).at(c0)[r - 1];
            std::uniform_real_distribution<double> u(-0.35, 0.35);
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<double> q(3);
                double shift = 0.0;
                for (auto& v : q) shift += (v = u(gen));
                for (auto& v : q) v = mean + v - shift / 3.0;
                Channel ch(q, FieldSize::infinite());
                CHECK(homog <= rlc_recurrence_moments(ch, c0, r).at(c0)[r - 1] + 1e-10);
            }
        }
}

TEST_CASE("recurrence mean lies between the largest and the summed component means") {
    Channel ch({0.3, 0.55, 0.9}, FieldSize::infinite());
    for (const auto& c0 : std::vector<TargetVector>{{1, 1, 1}, {3, 1, 2}, {4, 4, 0}, {2, 5, 3}}) {
        double lo = 0.0, hi = 0.0;
        for (int j = 0; j < 3; ++j) {
            lo = std::max(lo, c0[j] / ch.q(j));
            hi += c0[j] / ch.q(j);
        }
        double m = rlc_recurrence_moments(ch, c0, 1).mean();
        CHECK(m >= lo - 1e-12);
        CHECK(m <= hi + 1e-12);
    }
}
