#include "conc/grids.hpp"

#include <cmath>
#include <numeric>

namespace conc {

namespace {

double power_sum(const std::vector<std::complex<double>>& values, double p) {
    const double half_p = 0.5 * p;
    double s = 0.0;
    for (const auto& v : values) s += std::pow(std::norm(v), half_p);
    return s;
}

}  // namespace

double grid_sum(const SparseTrigPoly& f, double p, Frequency q, bool star) {
    if (p <= 0.0) throw Error(ErrorCode::InvalidArgument, "p must be positive");
    return power_sum(evaluate_grid(f, q, star), p);
}

GridSumReport grid_sums(const SparseTrigPoly& f, double p, Frequency q) {
    return {q, p, grid_sum(f, p, q, false), grid_sum(f, p, q, true)};
}

ConcentrationRatio grid_ratio(const SparseTrigPoly& f, double p, Frequency q,
                              Frequency numerator, bool star) {
    if (star) {
        if (numerator <= 0 || numerator >= 2 * q || numerator % 2 == 0)
            throw Error(ErrorCode::InvalidArgument, "star numerator must be odd in (0, 2q)");
    } else {
        if (numerator < 0 || numerator >= q)
            throw Error(ErrorCode::InvalidArgument, "numerator must lie in [0, q)");
    }
    const auto values = evaluate_grid(f, q, star);
    const double sum = power_sum(values, p);
    // exact zeros like 1 + e(1/2) leave rounding crumbs of order eps * R(0)
    const double floor_scale =
        static_cast<double>(q) * std::pow(f.coeff_sum() * 1e-12, p);
    if (sum <= floor_scale)
        throw Error(ErrorCode::ZeroGridSum, "polynomial vanishes identically on the grid");
    const std::size_t idx = star ? static_cast<std::size_t>((numerator - 1) / 2)
                                 : static_cast<std::size_t>(numerator);
    const double pv = std::pow(std::norm(values[idx]), 0.5 * p);
    return {q, numerator, star, pv, sum, pv / sum};
}

Frequency modular_inverse(Frequency a, Frequency m) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
    if (m == 1) return 1;
    Frequency r = ((a % m) + m) % m;
    if (std::gcd(r, m) != 1)
        throw Error(ErrorCode::NotCoprime,
                    std::to_string(a) + " is not invertible mod " + std::to_string(m));
    // extended Euclid
    Frequency old_r = r, rr = m;
    Frequency old_s = 1, s = 0;
    while (rr != 0) {
        const Frequency quot = old_r / rr;
        Frequency tmp = old_r - quot * rr;
        old_r = rr;
        rr = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    return ((old_s % m) + m) % m;
}

SparseTrigPoly remap_to_target(const SparseTrigPoly& Q, Frequency q, Frequency target,
                               bool star, Frequency dilation_nu) {
    if (dilation_nu < 1) throw Error(ErrorCode::InvalidArgument, "dilation must be >= 1");
    const Frequency modulus = star ? 2 * q : q;
    if (star) {
        if (target % 2 == 0 || target <= 0 || target >= 2 * q)
            throw Error(ErrorCode::InvalidArgument, "star target must be odd in (0, 2q)");
        if (dilation_nu % 2 == 0)
            throw Error(ErrorCode::NotCoprime, "star dilation must be odd");
    } else if (target <= 0 || target >= q) {
        throw Error(ErrorCode::InvalidArgument, "target must lie in (0, q)");
    }
    if (Q.degree() >= modulus)
        throw Error(ErrorCode::DegreeTooLarge, "witness degree must stay below the modulus");
    const Frequency scaled = checked_freq_mul(dilation_nu % modulus, target) % modulus;
    const Frequency b = modular_inverse(scaled, modulus);  // NotCoprime if gcd != 1
    SparseTrigPoly composed = project_mod(dilate(Q, b), modulus);
    if (Q.poly_class() == PolyClass::Idempotent &&
        composed.poly_class() != PolyClass::Idempotent)
        throw Error(ErrorCode::Collision, "projection collided; remap lost idempotency");
    return dilation_nu == 1 ? composed : dilate(composed, dilation_nu);
}

double grid_condition_K(const SparseTrigPoly& f, double p, Frequency q) {
    const GridSumReport r = grid_sums(f, p, q);
    if (r.sigma_star <= 0.0)
        throw Error(ErrorCode::ZeroGridSum, "star grid sum vanishes");
    return r.sigma / r.sigma_star;
}

BernsteinReport bernstein_report(const SparseTrigPoly& P, double p, Frequency q, double t,
                                 const QuadratureSpec& spec) {
    if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "requires p > 1");
    if (!(std::abs(t) < 0.5)) throw Error(ErrorCode::InvalidArgument, "requires |t| < 1/2");
    if (P.degree() >= q)
        throw Error(ErrorCode::DegreeTooLarge, "P must have degree < q");

    constexpr double two_pi = 2.0 * 3.14159265358979323846;
    // P(x+t) - P(x) = sum a_h (e(ht) - 1) e(hx)
    std::vector<ComplexTrigPoly::Term> diff;
    diff.reserve(P.terms().size());
    for (const auto& term : P.terms()) {
        const double theta = two_pi * frac_mul(term.freq, t);
        const std::complex<double> factor{std::cos(theta) - 1.0, std::sin(theta)};
        diff.push_back({term.freq, term.coeff * factor});
    }
    const ComplexTrigPoly shifted_diff{std::move(diff)};

    BernsteinReport rep{};
    rep.shift = t;
    const IntervalUnion circle = IntervalUnion::full_circle();
    rep.integral_diff_lhs = lp_integral(shifted_diff, p, circle, spec);
    rep.integral_diff_rhs = std::pow(two_pi * static_cast<double>(q) * std::abs(t), p) *
                            lp_integral(P, p, circle, spec);

    const auto base_values = evaluate_grid(P, q, false);
    const double half_p = 0.5 * p;
    double base_sum = 0.0, shifted_sum = 0.0, pert_sum = 0.0;
    for (Frequency k = 0; k < q; ++k) {
        const double base = std::pow(std::norm(base_values[static_cast<std::size_t>(k)]), half_p);
        const double x = static_cast<double>(k) / static_cast<double>(q) + t;
        const double moved = std::pow(std::norm(P.evaluate(x)), half_p);
        base_sum += base;
        shifted_sum += moved;
        pert_sum += std::abs(moved - base);
    }
    rep.grid_sum = base_sum;
    rep.shifted_grid_sum = shifted_sum;
    rep.perturbation_sum = pert_sum;
    rep.ratio_shifted = base_sum > 0.0 ? shifted_sum / base_sum : 0.0;
    const double qt = static_cast<double>(q) * std::abs(t);
    rep.ratio_perturbation = (base_sum > 0.0 && qt > 0.0) ? pert_sum / (qt * base_sum) : 0.0;
    return rep;
}

}  // namespace conc
