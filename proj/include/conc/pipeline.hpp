#pragma once

#include <cstdint>

#include "conc/constructions.hpp"
#include "conc/grids.hpp"
#include "conc/intervals.hpp"
#include "conc/poly.hpp"
#include "conc/quadrature.hpp"

namespace conc {

struct PipelineConfig {
    double p = 4.0;
    double target_c = 0.05;    // requested concentration ratio
    Frequency gap_N = 0;       // required spectral gap of the final polynomial
    double epsilon = 0.4;      // peak-mass deficit budget
    double delta = 0.3;        // cap on the peak half-width (in grid-cell units)
    double eta = 0.1;          // density slack for the set location
    double theta = 0.3;        // diophantine quality: neighborhoods theta/q^2
    int riesz_J = 0;           // 0 = auto
    Frequency riesz_R = 0;     // 0 = auto
    int dirichlet_L = 0;       // 0 = auto (plain route: 1 = plain witness, 2 = paired)
    std::uint64_t seed = 1;
    Frequency q_min = 2;
    Frequency q_max = 4096;

    void validate() const;
};

// Gap-peaking idempotent at a (0 or 1/2): T with min_gap > gap_N and
// measured mass int_{a-delta}^{a+delta} |T|^p > (1 - epsilon) int_T |T|^p.
// The Riesz depth J starts from the Gaussian-envelope estimate (curvature of
// the marginal at its peak) and grows until the profile mass clears
// 1 - epsilon/2; the base R starts from the collision-free threshold plus the
// gap requirement and doubles until the measured mass on T itself clears
// 1 - epsilon. Throws IllegalRegime for (a=0, p=2) and (a=1/2, p even),
// ResourceLimit when the term or frequency budget is exhausted.
struct PeakResult {
    SparseTrigPoly T;
    double peak_mass;
    int depth_J;
    Frequency riesz_base_R;
};
PeakResult build_peaking_idempotent(double a, double p, double epsilon, double delta,
                                    Frequency gap_N);

// Measured sub-quantities of the certificate chain. Writing
// G(u) = sum_k |R(x_k + u)|^p for the shifted grid sum (the quantity the
// Marcinkiewicz-Zygmund machinery controls), the exact decomposition
//   int_T |S|^p = (1/q) int_{|v|<=1/2} G(v/q) |T(v + peak)|^p dv
// gives the certified upper bound (tau^p/q)(pm * Ghat_inner +
// (1-pm) * Ghat_full), with the Ghat maxima of G sampled densely and widened
// through the Bernstein-Hoelder bound on G'. Together with the directly
// measured window integral int_{I_a} |S|^p this yields a certificate that is
// a true lower bound for the ratio up to quadrature tolerance.
struct ChainQuantities {
    double grid_ratio_C;      // |R(x0)|^p / grid sum
    double peak_mass;         // T mass on [peak +- delta]; eps_meas = 1 - peak_mass
    double point_value_p;     // |R(x0)|^p
    double grid_sum_p;        // Sigma |R|^p over the route grid = G(0)
    double window_integral;   // int over I_a of |S|^p, measured directly
    double g_hat_inner;       // certified max of G over |u| <= delta/q
    double g_hat_full;        // certified max of G over the whole cell
    double mz_ratio;          // g_hat_full / grid_sum: empirical MZ constant
    double window_deficit;    // 1 - window*q/(pm tau^p |R(x0)|^p): eps_1 analog
    double leakage_fraction;  // (1-pm) g_hat_full / denominator
    double doubling;          // 2 when I and -I are disjoint, else 1
    double certificate;       // doubling * window * q / (tau^p denominator)
};

struct RouteInfo {
    bool star;
    bool paired;
    Frequency q;
    Frequency target_numerator;  // a (plain) or 2a+1 (star)
    double x0;                   // the located grid point
    Frequency r;                 // Dirichlet kernel size of the witness
    Frequency nu;                // gap dilation of the witness
    int riesz_J;
    Frequency riesz_R;
    double delta;
    int escalation_rounds;
};

struct ConcentrationReport {
    std::size_t spectrum_size;
    Frequency degree;
    Frequency min_gap;
    double p;
    double integral_on_set;
    double integral_total;
    double ratio;
    ChainQuantities chain;
    RouteInfo route;
    PipelineConfig config;
    double p2_ceiling = 0.0;  // c2 annotation on the p = 2 route
    IntervalUnion set;
    SparseTrigPoly polynomial;  // full witness, kept for re-measurement
};

// End-to-end construction: locates an admissible grid fraction inside E,
// builds the grid witness R (remapped, gap-dilated Dirichlet kernel, paired
// on the star route), multiplies by the peaking factor T(qx), measures the
// ratio and the certificate chain, and escalates (q, pairing, J) until
// target_c is met. Throws TargetUnreachable with the best report attached
// when escalation is exhausted.
ConcentrationReport concentrate(const IntervalUnion& E, const PipelineConfig& config);

class TargetUnreachableError : public Error {
public:
    TargetUnreachableError(const std::string& what, ConcentrationReport best)
        : Error(ErrorCode::TargetUnreachable, what), best_(std::move(best)) {}
    const ConcentrationReport& best_report() const { return best_; }

private:
    ConcentrationReport best_;
};

// L^2 smallness of gapped polynomials near 0: measures
// int_{-d}^{d} |f|^2 / int_T |f|^2 and the triangle-function bound
// 2|E| + 2 sum_{|m|>N} |tri_hat(m)|, tri supported on 2E with height 1,
// tri_hat(m) = 2d (sin(2 pi m d)/(2 pi m d))^2. Requires min_gap(f) >= N.
struct L2GapRecord {
    double halfwidth;
    Frequency gap_requirement;
    double measured_ratio;
    double bound;
};
L2GapRecord l2_gap_bound(double E_halfwidth, const SparseTrigPoly& f, Frequency N);

// Deterministic concentration ratio of the folded Dirichlet-power base
// polynomial sum alpha_k e_k at 1/q.
double base_concentration_ratio(Frequency q, Frequency r, int L, double p);

// Random idempotents from the base profile: counts trials whose grid ratio
// at 1/q exceeds K_target. Trial i draws its seed from a SplitMix64 stream
// seeded with `seed`, so the record is reproducible bit for bit.
struct RandomTrialRecord {
    long trials;
    long successes;
    double best_ratio;
    double base_ratio;
};
RandomTrialRecord random_concentration_trial(Frequency q, Frequency r, int L, double p,
                                             double K_target, long trials, std::uint64_t seed);

}  // namespace conc
