#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>

#include "bcast/errors.hpp"
#include "bcast/rlc_delay.hpp"
#include "bcast/rng.hpp"
#include "bcast/sim.hpp"

using namespace bcast;

TEST_CASE("counter rng is keyed by seed and stream") {
    CounterRng a(7, 1), b(7, 1), c(7, 2);
    for (int i = 0; i < 100; ++i) {
        auto x = a();
        CHECK(x == b());
        (void)c();
    }
    CounterRng d(7, 1), e(7, 2);
    CHECK(d() != e());
    CounterRng u(1, 0);
    double mean = 0.0;
    for (int i = 0; i < 100000; ++i) {
        double v = u.uniform();
        CHECK((v >= 0.0 && v < 1.0));
        mean += v;
    }
    CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
    for (int i = 0; i < 1000; ++i) CHECK(u.below(3) < 3);
}

TEST_CASE("geometric simulation is reproducible and unbiased") {
    Channel ch({0.3, 0.7}, FieldSize::finite(4));
    TargetVector c0{2, 3};
    auto a = simulate_geometric(ch, c0, 1, 50000, 99);
    auto b = simulate_geometric(ch, c0, 1, 50000, 99);
    CHECK(a == b);
    double exact = rlc_recurrence_moments(ch, c0, 1).mean();
    CHECK(std::abs(a.mean - exact) < 4 * a.std_error);
    auto m = simulate_geometric(ch, {2, 2}, 1, 50000, 5, Extreme::Min);
    double exact_min = rlc_recurrence_min(ch, {2, 2});
    CHECK(std::abs(m.mean - exact_min) < 4 * m.std_error);
}

TEST_CASE("GF simulation for a single receiver") {
    Channel ch({0.6}, FieldSize::finite(3));
    auto g = simulate_gf(ch, 4, 40000, 11);
    double exact = rlc_recurrence_moments(ch, {4}, 1).mean();
    CHECK(std::abs(g.delay.mean - exact) < 4 * g.delay.std_error);
    for (int k = 0; k < 4; ++k) {
        double expect = 1.0 - std::pow(3.0, k - 4);
        double se = std::sqrt(expect * (1 - expect) / g.received[k]);
        CHECK(std::abs(g.innovation_freq[k] - expect) < 4 * se);
    }
    CHECK_THROWS_AS(simulate_gf(Channel({0.5}, FieldSize::finite(4)), 2, 10, 1), NonPrimeField);
    CHECK_THROWS_AS(simulate_gf(Channel({0.5}, FieldSize::infinite()), 2, 10, 1), NonPrimeField);
    CHECK(is_prime(257));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
}

TEST_CASE("trace replay") {
    ErasureTrace all(1, 20);
    for (int t = 1; t <= 20; ++t) all.set(0, t, true);
    for (int c = 1; c <= 4; ++c) CHECK(trace_delay(all, c, 7) == 7);
    CHECK_FALSE(trace_delay(all, 1, 21).has_value());

    ErasureTrace tr(2, 10);
    for (int t = 1; t <= 10; ++t) {
        tr.set(0, t, true);
        tr.set(1, t, t % 2 == 0);
    }
    CHECK(trace_delay(tr, 1, 2) == 4);
    CHECK(trace_delay(tr, 2, 2) == 4);
    CHECK(trace_delay(tr, 2, 3) == 6);
}

TEST_CASE("adversarial traces") {
    for (int c = 2; c <= 4; ++c)
        for (int l = 1; l < c; ++l) {
            int cp = 2 * c + l;
            for (int m = cp + 1; m <= cp + 5; ++m) {
                auto tr = adversarial_trace(c, cp, m);
                auto a = trace_delay(tr, c, m), b = trace_delay(tr, cp, m);
                REQUIRE(a.has_value());
                REQUIRE(b.has_value());
                CHECK(*b > *a);
            }
        }
    CHECK_THROWS_AS(adversarial_trace(2, 4, 6), DomainError);
    CHECK_THROWS_AS(adversarial_trace(3, 4, 3), DomainError);
}

TEST_CASE("shared traces: multiples never lose") {
    Channel ch({0.4, 0.8, 0.6}, FieldSize::infinite());
    auto cmp = shared_trace_experiment(ch, 12, {1, 2, 4}, 500, 3);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b) {
            CHECK(cmp.compared[a][b] > 0);
            CHECK(cmp.not_worse[a][b] == cmp.compared[a][b]);
        }
}

TEST_CASE("trace files round trip") {
    Channel ch({0.5, 0.2, 0.9}, FieldSize::infinite());
    auto tr = random_trace(ch, 77, 5, 1);
    auto path = (std::filesystem::temp_directory_path() / "bcast_trace_test.bin").string();
    write_trace(tr, path, {{"seed", 5}});
    CHECK(read_trace(path) == tr);
    CHECK(std::filesystem::exists(path + ".json"));
    std::filesystem::remove(path);
    std::filesystem::remove(path + ".json");
}

TEST_CASE("simulation output does not depend on the thread count") {
    Channel ch({0.35, 0.65}, FieldSize::finite(2));
    setenv("BCAST_DELAY_THREADS", "1", 1);
    auto one = simulate_geometric(ch, {3, 3}, 2, 20000, 8);
    auto cmp1 = shared_trace_experiment(ch, 9, {1, 2, 3}, 300, 4);
    setenv("BCAST_DELAY_THREADS", "4", 1);
    auto four = simulate_geometric(ch, {3, 3}, 2, 20000, 8);
    auto cmp4 = shared_trace_experiment(ch, 9, {1, 2, 3}, 300, 4);
    unsetenv("BCAST_DELAY_THREADS");
    CHECK(one == four);
    CHECK(cmp1.not_worse == cmp4.not_worse);
    CHECK(cmp1.compared == cmp4.compared);
}
