#include "conc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <numeric>

#include "conc/constants.hpp"
#include "conc/diophantine.hpp"
#include "conc/rng.hpp"

namespace conc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxRieszTerms = 8192;
constexpr int kMaxEscalationRounds = 4;

bool is_even_integer(double p, double tol = 1e-12) {
    const double half = p / 2.0;
    return std::abs(half - std::round(half)) < tol;
}

double circular_distance(double x, double y) {
    double d = std::abs(x - y);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

// Loose argmin of the A/B series used only to size the Dirichlet witness
// (r = t* q or t* 2q). Witness sizing tolerates ~1e-3 error, while certified
// tails for lambda in (1, 2) would need ~1e12 terms; a fixed partial sum on
// a coarse t-scan is the right tool here.
double loose_series_argmin(SeriesKind kind, double lambda) {
    constexpr long K = 20'000;
    auto partial = [&](double t) {
        const double pit = kPi * t;
        double sum = 0.0;
        if (kind == SeriesKind::A) {
            for (long k = K; k >= 0; --k) {
                const double u = static_cast<double>(2 * k + 1);
                sum += std::pow(std::abs(std::sin(kPi * frac_mul(2 * k + 1, t))) / u, lambda);
            }
            return sum / std::pow(std::sin(pit), lambda);
        }
        for (long k = K; k >= 1; --k) {
            const double u = static_cast<double>(k) * pit;
            sum += std::pow(std::abs(std::sin(kPi * frac_mul(k, t))) / u, lambda);
        }
        return std::pow(pit / std::sin(pit), lambda) * (1.0 + 2.0 * sum);
    };
    double best_t = 0.25, best_v = partial(0.25);
    for (int i = 0; i <= 160; ++i) {
        const double t = 0.05 + 0.42 * static_cast<double>(i) / 160.0;
        const double v = partial(t);
        if (v < best_v) {
            best_v = v;
            best_t = t;
        }
    }
    return best_t;
}

// tolerance for the peak-mass measurements: the asserted inequalities have
// O(1e-2) slack, so 1e-7 certified is ample and much cheaper than the
// default
const QuadratureSpec kMassSpec{4, 1e-7, 30};

// total L^p mass of T, exact via Parseval for even integer p with a modest
// spectrum, quadrature otherwise
double total_lp_mass(const SparseTrigPoly& T, double p) {
    if (is_even_integer(p)) {
        const int k = static_cast<int>(std::llround(p / 2.0));
        const double n = static_cast<double>(T.spectrum_size());
        if (std::pow(n, k) < 5.0e7) return parseval_even_norm(T, k);
    }
    return lp_integral(T, p, IntervalUnion::full_circle(), kMassSpec);
}

// ---------------------------------------------------------------------------
// peaking idempotents

struct PeakOptions {
    int force_J = 0;
    Frequency force_R = 0;
    int extra_J = 0;
    // extra panel-count weight per unit of T-degree and T-term in the
    // caller's integrals (the assembled S inherits degree q*deg(T)); 0 = none
    double downstream_factor = 0.0;
};

std::vector<double> marginal_profile(const BivariatePoly& f, double p, int n) {
    QuadratureSpec spec;
    spec.rel_tol = 1e-7;  // profile drives J selection only
    std::vector<double> F(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        F[static_cast<std::size_t>(i)] =
            marginal_integral(f, p, (static_cast<double>(i) + 0.5) / n, spec);
    return F;
}

double profile_mass_ratio(const std::vector<double>& F, int J, double a, double delta) {
    const int n = static_cast<int>(F.size());
    const double fmax = *std::max_element(F.begin(), F.end());
    if (fmax <= 0.0) return 0.0;
    double inside = 0.0, total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = (static_cast<double>(i) + 0.5) / n;
        const double w = std::pow(F[static_cast<std::size_t>(i)] / fmax, J);
        total += w;
        if (circular_distance(x, a) <= delta) inside += w;
    }
    return total > 0.0 ? inside / total : 0.0;
}

PeakResult build_peaking_impl(double a, double p, double epsilon, double delta, Frequency gap_N,
                              const PeakOptions& opt) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 0.5))
        throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1/2)");
    if (gap_N < 0) throw Error(ErrorCode::InvalidArgument, "gap_N must be >= 0");

    const PeakFamily family = select_peak_family(a, p);  // IllegalRegime gate
    const BivariatePoly f = family.bivariate();
    const double peak = family.peak_point();
    const Frequency M = f.bound();
    const std::size_t K = f.pairs().size();
    const bool exact_total = is_even_integer(p);

    const int max_J =
        static_cast<int>(std::floor(std::log(static_cast<double>(kMaxRieszTerms)) /
                                    std::log(static_cast<double>(K))));

    auto base_R = [&](int j) -> Frequency {
        return opt.force_R > 0 ? opt.force_R
                               : std::max<Frequency>({M * (j + 1) + 1, gap_N + 2 * j + 4, 16});
    };
    // degree grows like 2 M R^J; the certified quadratures below cannot
    // finish past this envelope
    auto cost_feasible = [&](int j, Frequency R) {
        double est_degree = 0.0, Rj = 1.0;
        for (int i = 1; i <= j; ++i) {
            Rj *= static_cast<double>(R);
            if (Rj > 4.0e15) return false;
            est_degree += static_cast<double>(M) * (1.0 + Rj);
        }
        const double terms = std::pow(static_cast<double>(K), j);
        const double span = exact_total ? 2.0 * delta : 2.0 * delta + 1.0;
        if (est_degree * terms * opt.downstream_factor > 5.0e7) return false;
        return est_degree * terms * span * 4.0 <= 6.0e7 && est_degree <= 4.0e15;
    };

    int J_start;
    if (opt.force_J > 0) {
        J_start = opt.force_J + opt.extra_J;
        if (J_start > max_J)
            throw Error(ErrorCode::ResourceLimit, "Riesz depth exceeds the term budget");
    } else {
        // The profile mass is the large-R limit of the mass of T itself
        // (it realizes the Gaussian-envelope estimate with the actual
        // marginal): prefer headroom of epsilon/2 when affordable, settle
        // for a thinner pad, and give up early when even the limit cannot
        // clear 1 - epsilon.
        const std::vector<double> profile = marginal_profile(f, p, 1024);
        const double target_hi = 1.0 - 0.5 * epsilon;
        const double target_lo = 1.0 - epsilon + std::min(0.05, 0.25 * epsilon);
        int J_hi = 0, J_lo = 0;
        double best_mass = 0.0;
        for (int j = 1; j <= max_J; ++j) {
            const double mass = profile_mass_ratio(profile, j, peak, delta);
            best_mass = std::max(best_mass, mass);
            if (J_lo == 0 && mass >= target_lo) J_lo = j;
            if (mass >= target_hi) {
                J_hi = j;
                break;
            }
        }
        if (J_lo == 0)
            throw Error(ErrorCode::ResourceLimit,
                        "peak too flat: best reachable mass " + std::to_string(best_mass) +
                            " within the term budget; widen delta or epsilon");
        J_start = (J_hi > 0 && cost_feasible(J_hi, base_R(J_hi))) ? J_hi : J_lo;
        J_start = std::min(J_start, max_J) + opt.extra_J;
        if (J_start > max_J)
            throw Error(ErrorCode::ResourceLimit, "Riesz depth exceeds the term budget");
    }

    for (int J = J_start; J <= max_J; ++J) {
        Frequency R = base_R(J);
        bool budget_hit = false;
        for (int attempt = 0; attempt < 4; ++attempt, R = checked_freq_mul(R, 2)) {
            if (!cost_feasible(J, R)) {
                budget_hit = true;
                break;
            }
            SparseTrigPoly T;
            try {
                T = riesz_product(f, R, J);
            } catch (const Error& e) {
                if (e.code() == ErrorCode::Overflow)
                    throw Error(ErrorCode::ResourceLimit,
                                "gap and depth demands exceed the frequency budget");
                throw;
            }
            if (T.min_gap() <= gap_N) continue;  // R not large enough, double it
            const double total = total_lp_mass(T, p);
            const double window =
                lp_integral_window(T, p, peak - delta, peak + delta, kMassSpec);
            const double pm = window / total;
            if (pm > 1.0 - epsilon) return {T, pm, J, R};
            if (opt.force_R > 0 && opt.force_J > 0) return {T, pm, J, R};
        }
        if (opt.force_J > 0)
            throw Error(ErrorCode::ResourceLimit,
                        "forced Riesz parameters cannot reach the peak-mass target");
        if (budget_hit && J == J_start)
            throw Error(ErrorCode::ResourceLimit,
                        "gap and depth demands exceed the quadrature budget");
        if (budget_hit) break;
    }
    throw Error(ErrorCode::ResourceLimit,
                "peak-mass target unreachable within the term budget");
}

// Dirichlet-kernel peak for the p = 2 route: no gap is possible there, and
// D_n concentrates |.|^2 mass at 0 as n grows.
std::pair<SparseTrigPoly, double> dirichlet_peak(double epsilon, double delta) {
    for (Frequency n = 8; n <= (1 << 20); n *= 2) {
        SparseTrigPoly T = dirichlet(n);
        const double pm = lp_integral_window(T, 2.0, -delta, delta, kMassSpec) /
                          static_cast<double>(n);
        if (pm > 1.0 - epsilon) return {T, pm};
    }
    throw Error(ErrorCode::ResourceLimit, "Dirichlet peak did not reach the mass target");
}

// ---------------------------------------------------------------------------
// fraction location

struct FractionChoice {
    Frequency q;
    Frequency numerator;
    double x0;
    double margin;  // containment half-width inside E
};

double guarded_margin(const IntervalUnion& E, double x, bool* doubled) {
    const double w = E.containment_halfwidth(x);
    // windows around x and -x are counted twice only when disjoint
    const double sep = std::min({x, std::abs(0.5 - x), 1.0 - x});
    if (sep > 1e-9) {
        *doubled = true;
        return std::min(w, sep);
    }
    *doubled = false;
    return w;
}

FractionChoice choose_fraction(const IntervalUnion& E, bool star, Frequency q_min,
                               Frequency q_max, double delta_cap, double theta, double eta) {
    // the diophantine search proper: guarantees an admissible located point
    const GridApproximation loc = locate_in_set(E, theta, eta, q_min, q_max, star, 1);

    FractionChoice best{0, 0, 0.0, -1.0};
    for (Frequency q = loc.q; q <= q_max; ++q) {
        const Frequency limit = star ? 2 * q : q;
        FractionChoice cand{0, 0, 0.0, -1.0};
        for (Frequency num = 1; num < limit; num += star ? 2 : 1) {
            if (star ? (std::gcd(num, 2 * q) != 1) : (std::gcd(num, q) != 1)) continue;
            const double x =
                static_cast<double>(num) / (star ? 2.0 * static_cast<double>(q)
                                                 : static_cast<double>(q));
            bool doubled = false;
            const double w = guarded_margin(E, x, &doubled);
            if (w > cand.margin) cand = {q, num, x, w};
        }
        if (cand.margin > 0.0) {
            const double score = static_cast<double>(cand.q) * cand.margin;
            if (best.margin <= 0.0 ||
                score > static_cast<double>(best.q) * best.margin)
                best = cand;
            if (score >= delta_cap) return cand;
        }
    }
    if (best.margin <= 0.0)
        throw Error(ErrorCode::NotFound, "no admissible fraction interior to E");
    return best;
}

// ---------------------------------------------------------------------------
// certificate chain

struct ChainInputs {
    const SparseTrigPoly& R;
    double p;
    Frequency q;
    bool star;
    Frequency target_index;  // k with x_k the target point
    double delta;
    double peak_mass;
    double tau_p;             // int_T |T|^p
    double window_integral;   // int over I_a of |S|^p, measured directly
    bool doubled;
};

// Certified maxima of the shifted grid sum G(u) = sum_k |R(x_k+u)|^p over
// |u| <= inner_radius and |u| <= 1/(2q). G is sampled densely in u and the
// sampled maxima are widened to cover the gaps:
//   p >  1:  |G(u)-G(s)| <= |u-s| p 2pi deg R(0) q^{1/p} (max G)^{1-1/p}
//            (Bernstein on R', Hoelder across the grid); the implicit max G
//            is resolved with max G <= 2 max_sampled, valid while the step
//            keeps the correction below max_sampled/2.
//   p <= 1:  ||a|^p - |b|^p| <= |a-b|^p gives the unconditional widening
//            q (|u-s| 2pi deg R(0))^p.
// If the work cap forces a step too coarse for the p > 1 resolution, the
// trivial bound G <= q R(0)^p is used instead; the certificate only weakens.
struct GHat {
    double inner;
    double full;
};
GHat shifted_grid_max(const SparseTrigPoly& R, double p, Frequency q, bool star,
                      double inner_radius, double grid_sum_scale) {
    const double dq = static_cast<double>(q);
    const double deg = static_cast<double>(R.degree());
    const double R0 = R.coeff_sum();
    const double trivial = dq * std::pow(R0, p);
    const double lipschitz = 2.0 * kPi * (deg + 1.0) * R0;  // bound on |R'|

    // step target: widening at most ~0.2 of the scale G(0)
    double h_cap;
    if (p <= 1.0)
        h_cap = 2.0 * std::pow(0.2 * grid_sum_scale / dq, 1.0 / p) / lipschitz;
    else
        h_cap = 0.4 * std::pow(grid_sum_scale, 1.0 / p) /
                (p * lipschitz * std::pow(dq, 1.0 / p));
    const double work_cap =
        3.0e7 / (dq * static_cast<double>(std::max<std::size_t>(R.terms().size(), 1)));
    const auto n_u = static_cast<std::size_t>(std::clamp(
        std::ceil(1.0 / (dq * h_cap)), 1024.0, std::max(1024.0, work_cap)));
    const double h = 1.0 / (dq * static_cast<double>(n_u));
    const double offset = star ? 0.5 : 0.0;

    double max_inner = 0.0, max_full = 0.0;
    const double half_p = 0.5 * p;
    for (std::size_t i = 0; i < n_u; ++i) {
        // u sweeps one cell [-1/(2q), 1/(2q)); by periodicity in u with
        // period 1/q this covers all shifts
        const double u = (static_cast<double>(i) + 0.5) * h - 0.5 / dq;
        double g = 0.0;
        for (Frequency k = 0; k < q; ++k) {
            const double x = (static_cast<double>(k) + offset) / dq + u;
            g += std::pow(std::norm(R.evaluate(x)), half_p);
        }
        max_full = std::max(max_full, g);
        if (std::abs(u) <= inner_radius) max_inner = std::max(max_inner, g);
    }
    if (max_inner <= 0.0) max_inner = max_full;  // window narrower than one step

    double widen;
    if (p <= 1.0) {
        widen = dq * std::pow(0.5 * h * lipschitz, p);
    } else {
        const double sigma =
            0.5 * h * p * lipschitz * std::pow(dq, 1.0 / p) / std::pow(max_full, 1.0 / p);
        if (sigma > 0.5) return {trivial, trivial};
        widen = sigma * std::pow(2.0, 1.0 - 1.0 / p) * max_full;
    }
    return {std::min(max_inner + widen, trivial), std::min(max_full + widen, trivial)};
}

ChainQuantities measure_chain(const ChainInputs& in) {
    const Frequency q = in.q;
    const double p = in.p;

    // grid quantities (exact roots-of-unity evaluation)
    const auto grid_vals = evaluate_grid(in.R, q, in.star);
    double sigma = 0.0;
    for (const auto& v : grid_vals) sigma += std::pow(std::norm(v), 0.5 * p);
    const double point_p =
        std::pow(std::norm(grid_vals[static_cast<std::size_t>(in.target_index)]), 0.5 * p);
    if (sigma <= 0.0) throw Error(ErrorCode::ZeroGridSum, "witness vanishes on the grid");

    const GHat ghat = shifted_grid_max(in.R, p, q, in.star,
                                       in.delta / static_cast<double>(q), sigma);

    ChainQuantities chain{};
    chain.grid_ratio_C = point_p / sigma;
    chain.peak_mass = in.peak_mass;
    chain.point_value_p = point_p;
    chain.grid_sum_p = sigma;
    chain.window_integral = in.window_integral;
    chain.g_hat_inner = ghat.inner;
    chain.g_hat_full = ghat.full;
    chain.mz_ratio = ghat.full / sigma;
    chain.doubling = in.doubled ? 2.0 : 1.0;
    const double pm = in.peak_mass;
    const double ideal = pm * in.tau_p * point_p / static_cast<double>(q);
    chain.window_deficit = ideal > 0.0 ? 1.0 - in.window_integral / ideal : 1.0;
    const double denom = in.tau_p * (pm * ghat.inner + (1.0 - pm) * ghat.full) /
                         static_cast<double>(q);
    chain.leakage_fraction =
        denom > 0.0 ? (1.0 - pm) * in.tau_p * ghat.full / (static_cast<double>(q) * denom) : 0.0;
    chain.certificate = denom > 0.0 ? chain.doubling * in.window_integral / denom : 0.0;
    return chain;
}

}  // namespace

void PipelineConfig::validate() const {
    if (!(p > 0.0)) throw Error(ErrorCode::InvalidArgument, "p must be positive");
    if (!(target_c > 0.0 && target_c < 1.0))
        throw Error(ErrorCode::InvalidArgument, "target_c must lie in (0, 1)");
    if (gap_N < 0) throw Error(ErrorCode::InvalidArgument, "gap_N must be >= 0");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 0.5))
        throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1/2)");
    if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorCode::InvalidArgument, "eta in (0,1)");
    if (!(theta > 0.0)) throw Error(ErrorCode::InvalidArgument, "theta must be positive");
    if (q_min < 2 || q_max < q_min)
        throw Error(ErrorCode::InvalidArgument, "need 2 <= q_min <= q_max");
}

PeakResult build_peaking_idempotent(double a, double p, double epsilon, double delta,
                                    Frequency gap_N) {
    return build_peaking_impl(a, p, epsilon, delta, gap_N, PeakOptions{});
}

namespace {

struct RouteAttempt {
    Frequency q_min;
    bool pair;
    int extra_J;
};

ConcentrationReport run_route(const IntervalUnion& E, const PipelineConfig& cfg,
                              const RouteAttempt& attempt, int round) {
    const double p = cfg.p;
    const bool p_even = is_even_integer(p);
    const bool p_is_two = std::abs(p - 2.0) < 1e-12;
    const bool star = !p_even;
    const Frequency gap_req = p_is_two ? 0 : cfg.gap_N;

    const FractionChoice fr = choose_fraction(E, star, attempt.q_min, cfg.q_max, cfg.delta,
                                              cfg.theta, cfg.eta);
    const Frequency q = fr.q;

    // Dirichlet size from the limiting minimizer of the matching series:
    // the witness is seen at exponent p (plain) or 2p (star/pair).
    const double lambda_eff = attempt.pair ? 2.0 * p : p;
    const double tstar = loose_series_argmin(star ? SeriesKind::A : SeriesKind::B, lambda_eff);
    // the star grid samples D_r at odd multiples of 1/(2q), so its limit
    // variable is r/(2q); the plain grid's is r/q
    const double scale = star ? 2.0 : 1.0;
    const Frequency r = std::clamp<Frequency>(
        static_cast<Frequency>(std::llround(tstar * scale * static_cast<double>(q))), 1, q - 1);

    // gap dilation of the witness
    Frequency nu = 1;
    if (gap_req > 0) {
        if (star) {
            nu = gap_req + 1;
            if (nu % 2 == 0) ++nu;
            while (std::gcd(nu, 2 * q) != 1) nu += 2;
        } else {
            const Frequency M = (gap_req + q - 1) / q;
            nu = M * q + 1;
        }
    }

    SparseTrigPoly witness = remap_to_target(dirichlet(r), q, fr.numerator, star, nu);
    if (attempt.pair) witness = multiply_strict(witness, dilate(witness, 2 * q + 1));

    // peak half-width: stay inside E and inside the grid cell
    bool doubled = false;
    const double margin = guarded_margin(E, fr.x0, &doubled);
    const double delta_T =
        std::min({cfg.delta, 0.95 * static_cast<double>(q) * margin, 0.45});
    if (delta_T < 1e-5)
        throw Error(ErrorCode::NotFound, "located fraction leaves no room for the peak window");

    // peaking factor
    SparseTrigPoly T;
    double pm;
    double tau_p;
    int used_J = 0;
    Frequency used_R = 0;
    if (p_is_two) {
        auto [T2, pm2] = dirichlet_peak(cfg.epsilon, delta_T);
        T = std::move(T2);
        pm = pm2;
        tau_p = static_cast<double>(T.spectrum_size());  // Parseval for D_n
    } else {
        const Frequency needed_gap = (witness.degree() + gap_req) / q + 1;
        PeakOptions opt;
        opt.force_J = cfg.riesz_J;
        opt.force_R = cfg.riesz_R;
        opt.extra_J = attempt.extra_J;
        // the assembled S has degree ~ q deg(T) and terms(witness)*terms(T)
        // terms; keep its integrals inside the quadrature budget
        const double span_S = p_even ? E.measure() : 1.0;
        opt.downstream_factor = span_S * 4.0 * static_cast<double>(q) *
                                static_cast<double>(witness.spectrum_size());
        PeakResult pk =
            build_peaking_impl(star ? 0.5 : 0.0, p, cfg.epsilon, delta_T, needed_gap, opt);
        T = std::move(pk.T);
        pm = pk.peak_mass;
        used_J = pk.depth_J;
        used_R = pk.riesz_base_R;
        tau_p = total_lp_mass(T, p);
    }

    SparseTrigPoly S = multiply_strict(witness, dilate(T, q));
    if (gap_req > 0 && S.min_gap() <= gap_req)
        throw Error(ErrorCode::GapViolation, "assembled spectrum violates the gap requirement");

    const double integral_total =
        p_even ? parseval_even_norm(S, static_cast<int>(std::llround(p / 2.0)))
               : lp_integral(S, p, IntervalUnion::full_circle(), kMassSpec);
    const double integral_on_set = lp_integral(S, p, E, kMassSpec);
    const double ratio = integral_on_set / integral_total;

    const double window_integral = lp_integral_window(
        S, p, fr.x0 - delta_T / static_cast<double>(q),
        fr.x0 + delta_T / static_cast<double>(q), kMassSpec);

    ChainInputs chain_in{witness,
                         p,
                         q,
                         star,
                         star ? (fr.numerator - 1) / 2 : fr.numerator,
                         delta_T,
                         pm,
                         tau_p,
                         window_integral,
                         doubled};
    ChainQuantities chain = measure_chain(chain_in);

    if (ratio < chain.certificate * (1.0 - 1e-6) - 1e-12)
        throw Error(ErrorCode::NonConvergence,
                    "measured ratio fell below its own certificate");

    ConcentrationReport rep{};
    rep.spectrum_size = S.spectrum_size();
    rep.degree = S.degree();
    rep.min_gap = S.min_gap();
    rep.p = p;
    rep.integral_on_set = integral_on_set;
    rep.integral_total = integral_total;
    rep.ratio = ratio;
    rep.chain = chain;
    rep.route = {star,   attempt.pair, q, fr.numerator, fr.x0,  r,
                 nu,     used_J,       used_R,           delta_T, round};
    rep.config = cfg;
    if (p_is_two) rep.p2_ceiling = c2_constant();
    rep.set = E;
    rep.polynomial = std::move(S);
    return rep;
}

}  // namespace

ConcentrationReport concentrate(const IntervalUnion& E, const PipelineConfig& config) {
    config.validate();
    if (!E.is_symmetric())
        throw Error(ErrorCode::InvalidArgument, "E must be symmetric");
    const bool p_even = is_even_integer(config.p);
    if (!p_even && config.p <= 0.5)
        throw Error(ErrorCode::IllegalRegime, "the star route requires p > 1/2");

    // measure-1 fast path: e_0 concentrates everything
    if (E.measure() >= 1.0 - 1e-12) {
        ConcentrationReport rep{};
        rep.polynomial = SparseTrigPoly::idempotent({0});
        rep.spectrum_size = 1;
        rep.degree = 0;
        rep.min_gap = SparseTrigPoly::kInfiniteGap;
        rep.p = config.p;
        rep.integral_on_set = 1.0;
        rep.integral_total = 1.0;
        rep.ratio = 1.0;
        rep.chain = {};
        rep.chain.certificate = 1.0;
        rep.chain.peak_mass = 1.0;
        rep.chain.doubling = 1.0;
        rep.route = {};
        rep.config = config;
        rep.set = E;
        return rep;
    }

    // escalation schedule: larger q first, then the paired witness (the
    // degree-doubling stand-in for L+1 on the remapped route), then deeper
    // Riesz peaks
    const bool star = !p_even;
    const bool pair_base = star || config.dirichlet_L >= 2;
    RouteAttempt attempt{config.q_min, pair_base, 0};

    ConcentrationReport best{};
    bool have_best = false;
    std::string last_error;
    for (int round = 0; round < kMaxEscalationRounds; ++round) {
        try {
            ConcentrationReport rep = run_route(E, config, attempt, round);
            if (!have_best || rep.ratio > best.ratio) {
                best = rep;
                have_best = true;
            }
            if (rep.ratio >= config.target_c) return rep;
            if (round == 0)
                attempt.q_min = std::min(config.q_max, rep.route.q * 2);
            else if (round == 1) {
                attempt.q_min = config.q_min;
                if (!attempt.pair)
                    attempt.pair = true;
                else
                    attempt.extra_J += 1;
            } else {
                attempt.extra_J += 1;
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::IllegalRegime) throw;
            last_error = e.what();
            if (std::getenv("CONC_DEBUG"))
                std::fprintf(stderr, "[conc] round %d failed: %s\n", round, e.what());
            attempt.extra_J += (round >= 1) ? 1 : 0;
            if (round == 0) attempt.q_min = std::min(config.q_max, config.q_min * 2);
        }
    }
    if (have_best)
        throw TargetUnreachableError(
            "best achieved ratio " + std::to_string(best.ratio) + " below target " +
                std::to_string(config.target_c),
            std::move(best));
    throw Error(ErrorCode::NotFound, "no route produced a witness: " + last_error);
}

L2GapRecord l2_gap_bound(double E_halfwidth, const SparseTrigPoly& f, Frequency N) {
    if (!(E_halfwidth > 0.0 && E_halfwidth < 0.25))
        throw Error(ErrorCode::InvalidArgument, "halfwidth must lie in (0, 1/4)");
    if (f.min_gap() < N)
        throw Error(ErrorCode::GapViolation, "polynomial gap below the requirement");
    const double delta = E_halfwidth;
    const double measured =
        lp_integral_window(f, 2.0, -delta, delta) / parseval_even_norm(f, 1);

    // triangle of height 1 on [-2 delta, 2 delta]: coefficients
    // 2 delta (sin(2 pi m delta)/(2 pi m delta))^2, all nonnegative
    const auto M = static_cast<Frequency>(std::max<double>(static_cast<double>(N) + 1000.0,
                                                           64.0 / delta));
    double tail_sum = 0.0;
    for (Frequency m = N + 1; m <= M; ++m) {
        const double u = 2.0 * kPi * static_cast<double>(m) * delta;
        const double s = std::sin(u) / u;
        tail_sum += 2.0 * delta * s * s;
    }
    // sum_{m>M} |tri_hat(m)| <= sum 1/(2 pi^2 m^2 delta) <= 1/(2 pi^2 M delta)
    tail_sum += 1.0 / (2.0 * kPi * kPi * static_cast<double>(M) * delta);
    const double bound = 2.0 * (2.0 * delta) + 2.0 * 2.0 * tail_sum;

    if (measured > bound + 1e-9)
        throw Error(ErrorCode::NonConvergence, "triangle bound violated; quadrature suspect");
    return {delta, N, measured, bound};
}

double base_concentration_ratio(Frequency q, Frequency r, int L, double p) {
    const std::vector<double> alpha = base_alpha_from_dirichlet_power(r, L, q);
    std::vector<SparseTrigPoly::Term> terms;
    for (std::size_t k = 0; k < alpha.size(); ++k)
        if (alpha[k] > 0.0) terms.push_back({static_cast<Frequency>(k), alpha[k]});
    const SparseTrigPoly base = SparseTrigPoly::make(std::move(terms), PolyClass::PositiveDefinite);
    return grid_ratio(base, p, q, 1, false).ratio;
}

RandomTrialRecord random_concentration_trial(Frequency q, Frequency r, int L, double p,
                                             double K_target, long trials, std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "need at least one trial");
    if (L > 3) throw Error(ErrorCode::InvalidArgument, "the pair route caps L at 3");
    const std::vector<double> alpha = base_alpha_from_dirichlet_power(r, L, q);

    RandomTrialRecord rec{};
    rec.trials = trials;
    rec.base_ratio = base_concentration_ratio(q, r, L, p);

    SplitMix64 master(seed);
    for (long i = 0; i < trials; ++i) {
        const std::uint64_t sub = master.next_u64();
        const SparseTrigPoly sample = random_idempotent(alpha, sub);
        if (sample.empty()) continue;
        double ratio = 0.0;
        try {
            ratio = grid_ratio(sample, p, q, 1, false).ratio;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ZeroGridSum) throw;
            continue;
        }
        rec.best_ratio = std::max(rec.best_ratio, ratio);
        if (ratio > K_target) ++rec.successes;
    }
    return rec;
}

}  // namespace conc
