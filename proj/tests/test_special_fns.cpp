#include <doctest.h>

#include <cmath>

#include "bcast/errors.hpp"
#include "bcast/special_fns.hpp"

using namespace bcast;

namespace {

// midpoint rule on the Beta density, for non-integer b
double beta_cdf_numeric(int a, double b, double x) {
    const int steps = 200000;
    double lb = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    double h = x / steps, sum = 0.0;
    for (int i = 0; i < steps; ++i) {
        double u = (i + 0.5) * h;
        sum += std::exp((a - 1) * std::log(u) + (b - 1) * std::log1p(-u) - lb);
    }
    return sum * h;
}

}  // namespace

TEST_CASE("stirling numbers") {
    CHECK(stirling2(0, 0) == 1);
    CHECK(stirling2(5, 2) == 15);
    CHECK(stirling2(5, 3) == 25);
    CHECK(stirling2(10, 5) == 42525);
    CHECK(stirling2(4, 0) == 0);
    CHECK(stirling2(3, 4) == 0);
    // sum_l S(r,l) is the Bell number
    std::uint64_t bell = 0;
    for (int l = 0; l <= 10; ++l) bell += stirling2(10, l);
    CHECK(bell == 115975);
    CHECK_NOTHROW(stirling2(25, 12));
    CHECK_THROWS_AS(stirling2(26, 3), GuardError);
}

TEST_CASE("phi, harmonic, binomial") {
    CHECK(phi(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(phi(1e-12) == doctest::Approx(1e-12).epsilon(1e-9));
    CHECK(harmonic(1) == 1.0);
    CHECK(harmonic(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
    CHECK(harmonic(1000000) - std::log(1e6) == doctest::Approx(kEulerGamma + 0.5e-6).epsilon(1e-9));
    CHECK(binomial(10, 3) == 120.0);
    CHECK(binomial(52, 5) == 2598960.0);
    CHECK(binomial(5, 7) == 0.0);
}

TEST_CASE("binomial tails sum to one and match direct sums") {
    for (int m : {1, 5, 30, 200})
        for (int a : {0, 1, 3, m / 2, m})
            for (double x : {0.05, 0.5, 0.93}) {
                auto t = binomial_tail(m, a, x);
                double direct = 0.0;
                for (int k = a; k <= m; ++k)
                    direct += std::exp(std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) +
                                       k * std::log(x) + (m - k) * std::log1p(-x));
                CHECK(t.upper == doctest::Approx(direct).epsilon(1e-11));
                CHECK(t.upper + t.lower == doctest::Approx(1.0).epsilon(1e-13));
            }
}

TEST_CASE("regularized incomplete beta") {
    // I_x(1,b) = 1 - (1-x)^b and I_x(a,1) = x^a
    for (double b : {0.5, 1.0, 2.5, 7.0})
        CHECK(reg_inc_beta({1, b, 0.3}) == doctest::Approx(1.0 - std::pow(0.7, b)).epsilon(1e-12));
    for (int a : {1, 2, 5}) CHECK(reg_inc_beta({a, 1.0, 0.4}) == doctest::Approx(std::pow(0.4, a)).epsilon(1e-12));
    for (int a : {1, 3, 6})
        for (double b : {0.7, 2.3, 5.5})
            for (double x : {0.1, 0.5, 0.85}) {
                double numeric = beta_cdf_numeric(a, b, x);
                CHECK(reg_inc_beta({a, b, x}) == doctest::Approx(numeric).epsilon(1e-6));
                CHECK(reg_inc_beta({a, b, x}) + reg_inc_beta_complement({a, b, x}) == doctest::Approx(1.0));
            }
    // integer and continued-fraction routes meet
    double below = reg_inc_beta({3, 4.0 - 1e-9, 0.6});
    CHECK(reg_inc_beta({3, 4.0, 0.6}) == doctest::Approx(below).epsilon(1e-7));
}

TEST_CASE("gamma ccdf against the Poisson sum") {
    for (int c : {1, 2, 5, 20})
        for (double s : {0.1, 1.0, 5.0, 30.0}) {
            double term = std::exp(-s), sum = 0.0;
            for (int k = 0; k < c; ++k) {
                sum += term;
                term *= s / (k + 1);
            }
            CHECK(gamma_ccdf(c, s) == doctest::Approx(sum).epsilon(1e-12));
            CHECK(gamma_cdf(c, s) + gamma_ccdf(c, s) == doctest::Approx(1.0).epsilon(1e-13));
        }
    CHECK(gamma_ccdf(1, 700.0) == doctest::Approx(std::exp(-700.0)).epsilon(1e-10));
    for (int c : {1, 3, 10})
        for (double u : {0.5, 1e-3, 1e-8}) CHECK(gamma_ccdf(c, gamma_ccdf_inv(c, u)) == doctest::Approx(u).epsilon(1e-9));
    CHECK(gamma_ccdf_inv(1, 1e-5) == doctest::Approx(std::log(1e5)).epsilon(1e-10));
}

TEST_CASE("hypoexponential") {
    const double a = 0.7, b = 1.9;
    for (double y : {0.2, 1.0, 4.0}) {
        double expected = 1.0 - (b * std::exp(-a * y) - a * std::exp(-b * y)) / (b - a);
        CHECK(hypoexp_cdf({a, b}, y) == doctest::Approx(expected).epsilon(1e-13));
        CHECK(hypoexp_ccdf_uniformized({a, b}, y) == doctest::Approx(1.0 - expected).epsilon(1e-11));
    }
    // repeated rates reduce to the Gamma
    CHECK(hypoexp_ccdf_uniformized({2.0, 2.0, 2.0}, 1.5) == doctest::Approx(gamma_ccdf(3, 3.0)).epsilon(1e-11));
    CHECK_THROWS_AS(hypoexp_cdf({1.0, 1.0}, 1.0), DegenerateRates);
    CHECK(hypoexp_weight_mass({1.0, 2.0}) == doctest::Approx(3.0));
}

TEST_CASE("gumbel moments") {
    CHECK(gumbel_moment(1) == doctest::Approx(kEulerGamma).epsilon(1e-15));
    CHECK(gumbel_moment(2) == doctest::Approx(kEulerGamma * kEulerGamma + kPi * kPi / 6.0).epsilon(1e-15));
}

TEST_CASE("stirling falling-factorial identity") {
    for (int m = 0; m <= 8; ++m)
        for (int r = 1; r <= 8; ++r) {
            double total = 0.0, fact = 1.0;
            for (int l = 1; l <= r; ++l) {
                fact *= l;
                total += static_cast<double>(stirling2(r, l)) * fact * binomial(m, l);
            }
            CHECK(total == std::pow(m, r));
        }
    for (int r = 1; r <= 20; ++r)
        for (int l = 1; l <= r; ++l)
            CHECK(stirling2(r, l) == l * stirling2(r - 1, l) + stirling2(r - 1, l - 1));
}

TEST_CASE("gamma ccdf recursion in the shape") {
    for (int c = 1; c <= 50; ++c)
        for (double x = 0.25; x <= 200.0; x *= 1.7) {
            double step = std::exp(c * std::log(x) - x - std::lgamma(c + 1.0));
            CHECK(std::abs(gamma_ccdf(c + 1, x) - (gamma_ccdf(c, x) + step)) <= 1e-12);
        }
}

TEST_CASE("equal-rate hypoexponential through the gamma path") {
    for (int c = 1; c <= 10; ++c)
        for (double lambda : {0.3, 1.0, 2.5})
            for (double y : {0.1, 1.0, 5.0, 20.0})
                CHECK(std::abs(hypoexp_ccdf_uniformized(std::vector<double>(c, lambda), y) -
                               gamma_ccdf(c, lambda * y)) <= 1e-10);
}
