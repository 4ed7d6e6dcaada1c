#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "bcast/errors.hpp"
#include "bcast/ut_delay.hpp"

using namespace bcast;

namespace {

// sum_x x^r P(max = x) with P(max <= x) = prod_j (1 - (1-q_j)^x)
double brute_max_moment(const std::vector<double>& q, int r) {
    double prev = 0.0, total = 0.0;
    for (int x = 1; x < 20000; ++x) {
        double f = 1.0;
        for (double v : q) f *= 1.0 - std::pow(1.0 - v, x);
        total += std::pow(x, r) * (f - prev);
        prev = f;
        if (1.0 - f < 1e-18) break;
    }
    return total;
}

}  // namespace

TEST_CASE("geometric moments") {
    CHECK(geo_moment(0.25, 1) == doctest::Approx(4.0));
    CHECK(geo_moment(0.25, 2) == doctest::Approx((2.0 - 0.25) / (0.25 * 0.25)));
    CHECK(geo_moment(0.5, 3) == doctest::Approx(brute_max_moment({0.5}, 3)).epsilon(1e-12));
    CHECK_THROWS_AS(geo_moment(0.5, 11), GuardError);
}

TEST_CASE("exact maximum moment via min-max") {
    CHECK(ut_max_moment_exact({1, {0.5, 0.5}}) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    double q1 = 0.3, q2 = 0.8;
    CHECK(ut_max_moment_exact({1, {q1, q2}}) ==
          doctest::Approx(1 / q1 + 1 / q2 - 1 / (1 - (1 - q1) * (1 - q2))).epsilon(1e-13));
    for (const auto& q : std::vector<std::vector<double>>{{0.5}, {0.2, 0.9}, {0.4, 0.6, 0.75}, {0.5, 0.5, 0.5, 0.5, 0.5}})
        for (int r = 1; r <= 3; ++r)
            CHECK(ut_max_moment_exact({r, q}) == doctest::Approx(brute_max_moment(q, r)).epsilon(1e-10));
}

TEST_CASE("psi bounds sandwich the exact moment") {
    for (const auto& q : std::vector<std::vector<double>>{{0.5}, {0.2, 0.9}, {0.1, 0.3, 0.95}, {0.6, 0.6, 0.6, 0.6}})
        for (int r = 1; r <= 3; ++r) {
            auto b = ut_max_moment_bounds({r, q});
            double e = ut_max_moment_exact({r, q});
            CHECK(b.lower <= e);
            CHECK(e <= b.upper);
        }
    CHECK(ut_psi({0.3, 0.4}, 0) == 1.0);
    auto b = ut_max_moment_bounds({1, {0.2, 0.7, 0.9}});
    CHECK(b.upper - b.lower == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Fourier series for the homogeneous mean") {
    for (int n = 1; n <= 6; ++n) {
        auto e = ut_mean_eisenberg(0.4, n, 1000);
        CHECK(e.value == doctest::Approx(ut_max_moment_exact({1, std::vector<double>(n, 0.4)})).epsilon(1e-8));
    }
    for (int K : {100, 1000}) CHECK(std::abs(ut_mean_eisenberg(0.3, 1, K).value - 1 / 0.3) < 1e-6);
    CHECK_THROWS_AS(ut_mean_eisenberg(0.3, 0, 10), DomainError);
}

TEST_CASE("grid sandwich and oracle equivalence") {
    std::vector<double> levels;
    for (int i = 1; i <= 9; ++i) levels.push_back(i / 10.0);
    std::vector<double> q;
    long points = 0;
    std::function<void(std::size_t, int)> walk = [&](std::size_t from, int n) {
        if (static_cast<int>(q.size()) == n) {
            for (int r = 1; r <= 3; ++r) {
                double e = ut_max_moment_exact({r, q});
                auto b = ut_max_moment_bounds({r, q});
                REQUIRE(b.lower <= e);
                REQUIRE(e <= b.upper);
                if (n <= 3 || points % 37 == 0) REQUIRE(e == doctest::Approx(brute_max_moment(q, r)).epsilon(1e-9));
                ++points;
            }
            return;
        }
        for (std::size_t i = from; i < levels.size(); ++i) {
            q.push_back(levels[i]);
            walk(i, n);
            q.pop_back();
        }
    };
    for (int n = 1; n <= 6; ++n) walk(0, n);
    CHECK(points > 10000);
}

TEST_CASE("homogeneous channel minimizes the moment at fixed mean") {
    std::mt19937_64 gen(123);
    for (int n : {2, 4})
        for (int r : {1, 2}) {
            const double mean = 0.5;
            double homog = ut_max_moment_exact({r, std::vector<double>(n, mean)});
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<double> q(n);
                std::uniform_real_distribution<double> u(-0.4, 0.4);
                double shift = 0.0;
                for (auto& v : q) shift += (v = u(gen));
                for (auto& v : q) v = mean + v - shift / n;
                bool valid = true;
                for (double v : q) valid = valid && v > 0.0 && v < 1.0;
                if (!valid) continue;
                CHECK(homog <= ut_max_moment_exact({r, q}) + 1e-12);
            }
        }
}

TEST_CASE("adding a receiver never helps") {
    std::vector<double> q;
    double prev = 0.0;
    for (double v : {0.6, 0.9, 0.3, 0.75, 0.5}) {
        q.push_back(v);
        double e = ut_max_moment_exact({2, q});
        CHECK(e >= prev);
        prev = e;
    }
}
