#include <doctest.h>

#include <cmath>
#include <numeric>

#include "conc/diophantine.hpp"
#include "conc/rng.hpp"

using namespace conc;

TEST_CASE("convergents of pi - 3") {
    const auto cs = convergents(0.14159265358979, 6);
    REQUIRE(cs.size() == 6);
    CHECK(cs[0].p == 1);
    CHECK(cs[0].q == 7);  // the classical 1/7
    for (const auto& c : cs) {
        CHECK(std::gcd(c.p, c.q) == 1);
        const double err = std::abs(0.14159265358979 - static_cast<double>(c.p) /
                                                           static_cast<double>(c.q));
        CHECK(err < 1.0 / (static_cast<double>(c.q) * static_cast<double>(c.q)));
    }
    CHECK(std::abs(0.14159265358979 - 1.0 / 7.0) == doctest::Approx(0.00126).epsilon(0.01));
}

TEST_CASE("convergents of the golden ratio are Fibonacci quotients") {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const auto cs = convergents(phi, 10);
    Frequency fib_prev = 1, fib = 1;  // F_1/F_2, F_2/F_3, ...
    for (const auto& c : cs) {
        CHECK(c.p == fib_prev);
        CHECK(c.q == fib);
        const Frequency next = fib_prev + fib;
        fib_prev = fib;
        fib = next;
    }
}

TEST_CASE("rational inputs terminate with an error") {
    CHECK_THROWS_AS((void)convergents(0.5, 4), Error);
    try {
        (void)convergents(0.25, 8);
        FAIL("expected RationalInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RationalInput);
    }
}

TEST_CASE("best grid approximation near a rational target") {
    const GridApproximation g = best_grid_approx(1.0 / 3.0 + 1e-9, 0.1, 2, 100, false, 1);
    CHECK(g.q == 3);
    CHECK(g.numerator == 1);
    CHECK(g.error <= g.theta / (static_cast<double>(g.q) * static_cast<double>(g.q)));
    CHECK(std::gcd(g.numerator, g.q) == 1);
}

TEST_CASE("star grid cannot reach 1/2 with a tight budget") {
    // every star fraction (2k+1)/(2q) with q >= 2 stays at distance >= 1/(2q)
    // from 1/2 once reduced, so theta = 0.1 gives an honest NotFound
    CHECK_THROWS_AS((void)best_grid_approx(0.5, 0.1, 2, 200, true, 1), Error);
    try {
        (void)best_grid_approx(0.5, 0.1, 2, 200, true, 1);
        FAIL("expected NotFound");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotFound);
    }
}

TEST_CASE("coprimality filter on q") {
    SplitMix64 rng(8);
    for (int i = 0; i < 20; ++i) {
        const double xi = 0.1 + 0.8 * rng.next_double();
        const Frequency coprime_to = 2 + static_cast<Frequency>(rng.next_below(10));
        GridApproximation g{};
        try {
            g = best_grid_approx(xi, 1.0, 2, 10'000, false, coprime_to);
        } catch (const Error&) {
            continue;
        }
        CHECK(std::gcd(g.q, coprime_to) == 1);
        CHECK(g.coprime_witness_q == 1);
    }
}

TEST_CASE("dirichlet-level quality is reachable for random irrationals") {
    SplitMix64 rng(1001);
    for (int i = 0; i < 100; ++i) {
        const double xi = rng.next_double();
        if (xi < 1e-3 || xi > 1.0 - 1e-3) continue;
        const GridApproximation g = best_grid_approx(xi, 1.0, 2, 10'000, false, 1);
        CHECK(g.q <= 10'000);
        CHECK(g.error <= 1.0 / (static_cast<double>(g.q) * static_cast<double>(g.q)));
        CHECK(std::gcd(g.numerator, g.q) == 1);
    }
}

TEST_CASE("locate_in_set density certificates") {
    const IntervalUnion E = IntervalUnion::make({{0.3, 0.4}}, false);
    const GridApproximation g = locate_in_set(E, 0.5, 0.1, 2, 200, false, 1);
    CHECK(g.density >= 0.9);
    CHECK(g.value >= 0.3 - 0.5 / static_cast<double>(g.q * g.q));
    CHECK(g.value <= 0.4 + 0.5 / static_cast<double>(g.q * g.q));
    // independent re-check of the density from raw interval arithmetic
    const double radius = g.theta / static_cast<double>(g.q * g.q);
    double inside = 0.0;
    const double lo = g.value - radius, hi = g.value + radius;
    const double il = std::max(lo, 0.3), ih = std::min(hi, 0.4);
    if (ih > il) inside = ih - il;
    CHECK(g.density == doctest::Approx(inside / (2.0 * radius)).epsilon(1e-12));

    // full circle: the first admissible q wins
    const GridApproximation full =
        locate_in_set(IntervalUnion::full_circle(), 0.5, 0.1, 2, 50, false, 1);
    CHECK(full.q == 2);
    CHECK(full.density == doctest::Approx(1.0));

    // star variant
    const GridApproximation st = locate_in_set(E, 0.5, 0.1, 2, 200, true, 1);
    CHECK(st.numerator % 2 == 1);
    CHECK(std::gcd(st.numerator, 2 * st.q) == 1);
    CHECK(st.density >= 0.9);

    // a window too small and a set avoiding every small-q fraction
    const IntervalUnion gap = IntervalUnion::make({{0.41, 0.45}}, false);
    CHECK_THROWS_AS((void)locate_in_set(gap, 0.25, 0.05, 2, 3, false, 1), Error);
}

TEST_CASE("grid approximations satisfy their own invariants") {
    SplitMix64 rng(555);
    for (int i = 0; i < 30; ++i) {
        const double xi = rng.next_double();
        if (xi < 1e-3 || xi > 1.0 - 1e-3) continue;
        const bool star = i % 2 == 0;
        GridApproximation g{};
        try {
            g = best_grid_approx(xi, 2.0, 2, 3000, star, 1);
        } catch (const Error&) {
            continue;
        }
        const Frequency modulus = star ? 2 * g.q : g.q;
        if (star) CHECK(g.numerator % 2 == 1);
        CHECK(std::gcd(g.numerator, modulus) == 1);
        CHECK(g.error <= g.theta / static_cast<double>(g.q * g.q) + 1e-15);
        const double denom = star ? 2.0 * static_cast<double>(g.q) : static_cast<double>(g.q);
        CHECK(g.value == doctest::Approx(static_cast<double>(g.numerator) / denom));
    }
}
