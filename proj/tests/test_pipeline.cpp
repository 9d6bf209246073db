#include <doctest.h>

#include <cmath>

#include "conc/constants.hpp"
#include "conc/constructions.hpp"
#include "conc/pipeline.hpp"
#include "conc/quadrature.hpp"

using namespace conc;

TEST_CASE("regime gates") {
    CHECK_THROWS_AS((void)build_peaking_idempotent(0.0, 2.0, 0.4, 0.2, 5), Error);
    CHECK_THROWS_AS((void)build_peaking_idempotent(0.5, 4.0, 0.4, 0.2, 5), Error);
    try {
        (void)build_peaking_idempotent(0.0, 2.0, 0.4, 0.2, 5);
        FAIL("expected IllegalRegime");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IllegalRegime);
    }
    PipelineConfig cfg;
    cfg.p = 0.4;
    CHECK_THROWS_AS((void)concentrate(IntervalUnion::symmetric_pair(0.3, 0.05), cfg), Error);
    try {
        (void)concentrate(IntervalUnion::symmetric_pair(0.3, 0.05), cfg);
        FAIL("expected IllegalRegime");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IllegalRegime);
    }
}

TEST_CASE("peaking idempotent at 1/2 for p = 1") {
    // A window of delta = 0.1 would need a Riesz depth near 28 for this
    // family (term count 3^28), out of reach of any in-memory build;
    // delta = 0.25 exercises the same contract at desk scale.
    const PeakResult pk = build_peaking_idempotent(0.5, 1.0, 0.5, 0.25, 10);
    CHECK(pk.peak_mass > 0.5);
    CHECK(pk.T.min_gap() > 10);
    CHECK(pk.T.poly_class() == PolyClass::Idempotent);
    // measured mass is reproduced by an independent window quadrature
    const double total = lp_integral(pk.T, 1.0, IntervalUnion::full_circle());
    const double window = lp_integral_window(pk.T, 1.0, 0.25, 0.75);
    CHECK(window / total == doctest::Approx(pk.peak_mass).epsilon(1e-5));
}

TEST_CASE("peaking idempotent at 0 for p = 4 honors gaps") {
    const PeakResult pk = build_peaking_idempotent(0.0, 4.0, 0.4, 0.3, 40);
    CHECK(pk.peak_mass > 0.6);
    CHECK(pk.T.min_gap() > 40);
    CHECK(pk.riesz_base_R > 40);
}

TEST_CASE("monotone escalation of the profile mass") {
    // fixed profile, fixed window: the in-window share of F^J never drops
    // as J grows, since this marginal is unimodal about its peak
    const BivariatePoly f = BivariatePoly::make({{0, 0}, {0, 1}, {1, 2}});
    QuadratureSpec spec;
    spec.rel_tol = 1e-7;
    const int n = 512;
    std::vector<double> F(n);
    for (int i = 0; i < n; ++i)
        F[static_cast<std::size_t>(i)] = marginal_integral(f, 4.0, (i + 0.5) / double(n), spec);
    const double fmax = *std::max_element(F.begin(), F.end());
    auto mass = [&](int J) {
        double in = 0.0, tot = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = (i + 0.5) / double(n);
            const double w = std::pow(F[static_cast<std::size_t>(i)] / fmax, J);
            tot += w;
            const double d = std::min(x, 1.0 - x);
            if (d <= 0.2) in += w;
        }
        return in / tot;
    };
    double prev = mass(1);
    for (int J = 2; J <= 8; ++J) {
        const double cur = mass(J);
        CHECK(cur >= prev - 1e-9);
        prev = cur;
    }
}

TEST_CASE("concentrate fast path on the full circle") {
    PipelineConfig cfg;
    cfg.p = 4.0;
    const ConcentrationReport rep = concentrate(IntervalUnion::full_circle(), cfg);
    CHECK(rep.ratio == doctest::Approx(1.0));
    CHECK(rep.spectrum_size == 1);
}

TEST_CASE("concentrate certificate is honest: plain route") {
    const IntervalUnion E = IntervalUnion::symmetric_pair(1.0 / 3.0, 0.02);
    PipelineConfig cfg;
    cfg.p = 4.0;
    cfg.gap_N = 50;
    cfg.target_c = 0.01;
    const ConcentrationReport rep = concentrate(E, cfg);
    CHECK(rep.min_gap > 50);
    CHECK(rep.chain.certificate > 0.0);
    CHECK(rep.ratio >= rep.chain.certificate * (1.0 - 1e-6));
    CHECK(rep.ratio == doctest::Approx(rep.integral_on_set / rep.integral_total));
    // gap honesty: recompute from the emitted spectrum
    CHECK(rep.polynomial.min_gap() == rep.min_gap);
    CHECK(rep.polynomial.poly_class() == PolyClass::Idempotent);
    // independent re-measurement
    const RiemannRatio oracle = riemann_lp_ratio(rep.polynomial, 4.0, E, 8);
    CHECK(std::abs(oracle.ratio - rep.ratio) < 1e-6);
}

TEST_CASE("concentrate honors a large gap request") {
    const IntervalUnion E = IntervalUnion::symmetric_pair(1.0 / 3.0, 0.02);
    PipelineConfig cfg;
    cfg.p = 4.0;
    cfg.gap_N = 1000;
    cfg.target_c = 0.01;
    const ConcentrationReport rep = concentrate(E, cfg);
    CHECK(rep.min_gap > 1000);
    CHECK(rep.ratio >= rep.chain.certificate * (1.0 - 1e-6));
}

TEST_CASE("concentrate star route for non-even p") {
    const IntervalUnion E = IntervalUnion::make({{0.1, 0.48}, {-0.48, -0.1}}, true);
    PipelineConfig cfg;
    cfg.p = 3.0;
    cfg.gap_N = 10;
    cfg.target_c = 0.05;
    cfg.delta = 0.45;
    const ConcentrationReport rep = concentrate(E, cfg);
    CHECK(rep.route.star);
    CHECK(rep.route.paired);
    CHECK(rep.min_gap > 10);
    CHECK(rep.ratio >= rep.chain.certificate * (1.0 - 1e-6));
    CHECK(rep.chain.certificate > 0.0);
    CHECK(rep.route.target_numerator % 2 == 1);
}

TEST_CASE("concentrate star route below p = 1") {
    const IntervalUnion E = IntervalUnion::make({{0.1, 0.48}, {-0.48, -0.1}}, true);
    PipelineConfig cfg;
    cfg.p = 0.75;
    cfg.gap_N = 5;
    cfg.target_c = 0.02;
    cfg.delta = 0.45;
    const ConcentrationReport rep = concentrate(E, cfg);
    CHECK(rep.route.star);
    CHECK(rep.min_gap > 5);
    CHECK(rep.chain.certificate > 0.0);
    CHECK(rep.ratio >= rep.chain.certificate * (1.0 - 1e-6));
}

TEST_CASE("concentrate near the seam") {
    // components hugging 0 from both sides; the mirrored window overlaps
    // guard must kick in
    const IntervalUnion E = IntervalUnion::symmetric_pair(0.04, 0.015);
    PipelineConfig cfg;
    cfg.p = 4.0;
    cfg.gap_N = 10;
    cfg.target_c = 0.005;
    const ConcentrationReport rep = concentrate(E, cfg);
    CHECK(rep.min_gap > 10);
    CHECK(rep.chain.certificate > 0.0);
    CHECK(rep.ratio >= rep.chain.certificate * (1.0 - 1e-6));
    const RiemannRatio oracle = riemann_lp_ratio(rep.polynomial, 4.0, E, 8);
    CHECK(std::abs(oracle.ratio - rep.ratio) < 1e-6);
}

TEST_CASE("concentrate p = 2 runs gap-free and reports the ceiling") {
    const IntervalUnion E = IntervalUnion::symmetric_pair(0.25, 0.05);
    PipelineConfig cfg;
    cfg.p = 2.0;
    cfg.gap_N = 500;  // ignored on this route
    cfg.target_c = 0.05;
    const ConcentrationReport rep = concentrate(E, cfg);
    CHECK(rep.p2_ceiling == doctest::Approx(c2_constant()));
    CHECK(rep.ratio <= rep.p2_ceiling + 0.02);
    CHECK(rep.ratio > 0.1);
}

TEST_CASE("unreachable targets carry the best report") {
    const IntervalUnion E = IntervalUnion::symmetric_pair(1.0 / 3.0, 0.02);
    PipelineConfig cfg;
    cfg.p = 4.0;
    cfg.target_c = 0.9;   // beyond any desk-scale witness
    cfg.epsilon = 0.55;   // keeps the escalated rounds cheap
    cfg.q_max = 48;
    try {
        (void)concentrate(E, cfg);
        FAIL("expected TargetUnreachable");
    } catch (const TargetUnreachableError& e) {
        CHECK(e.code() == ErrorCode::TargetUnreachable);
        CHECK(e.best_report().ratio > 0.0);
        CHECK(e.best_report().ratio < 0.9);
    }
}

TEST_CASE("l2 gap bound") {
    // constant polynomial: ratio equals |E| = 2 delta
    const L2GapRecord flat = l2_gap_bound(0.05, SparseTrigPoly::idempotent({0}), 100);
    CHECK(flat.measured_ratio == doctest::Approx(0.1).epsilon(1e-8));
    CHECK(flat.bound >= 0.2);

    // dilated kernels: ratio decreases toward 2 delta as the gap grows
    double prev = 1.0;
    for (Frequency M : {10, 100, 1000}) {
        const L2GapRecord rec = l2_gap_bound(0.01, dilate(dirichlet(3), M), M);
        CHECK(rec.measured_ratio <= rec.bound + 1e-9);
        CHECK(rec.measured_ratio <= prev + 1e-9);
        prev = rec.measured_ratio;
    }
    // the tail term vanishes as N grows: bound decreases to 2|E| = 4 delta
    const SparseTrigPoly f1 = dilate(dirichlet(2), 200);
    const SparseTrigPoly f2 = dilate(dirichlet(2), 4000);
    const double b1 = l2_gap_bound(0.01, f1, 200).bound;
    const double b2 = l2_gap_bound(0.01, f2, 4000).bound;
    CHECK(b2 < b1);
    CHECK(b2 >= 4.0 * 0.01);
    CHECK(b2 < 4.0 * 0.01 * 1.2);

    CHECK_THROWS_AS((void)l2_gap_bound(0.01, dirichlet(9), 50), Error);  // gap violated
}

TEST_CASE("random concentration trials are reproducible") {
    // alpha all 1 reproduces the full Dirichlet kernel every time; D_q
    // vanishes on the grid away from 0, so the deterministic ratio is 0
    const double base = base_concentration_ratio(4, 4, 1, 2.0);
    CHECK(base == doctest::Approx(0.0));
    const RandomTrialRecord all_ones = random_concentration_trial(4, 4, 1, 2.0, 0.5, 10, 3);
    CHECK(all_ones.successes == 0);
    CHECK(all_ones.best_ratio == doctest::Approx(base));

    const RandomTrialRecord a = random_concentration_trial(101, 25, 2, 4.0, 0.1, 50, 7);
    const RandomTrialRecord b = random_concentration_trial(101, 25, 2, 4.0, 0.1, 50, 7);
    CHECK(a.successes == b.successes);
    CHECK(a.best_ratio == b.best_ratio);
    CHECK(a.base_ratio == b.base_ratio);
    const RandomTrialRecord c = random_concentration_trial(101, 25, 2, 4.0, 0.1, 50, 8);
    CHECK((c.successes != a.successes || c.best_ratio != a.best_ratio));
}
