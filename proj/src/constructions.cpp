#include "conc/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conc/rng.hpp"

namespace conc {

BivariatePoly BivariatePoly::make(std::vector<Pair> pairs) {
    if (pairs.empty()) throw Error(ErrorCode::InvalidArgument, "empty bivariate polynomial");
    Frequency bound = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].n < 0 || pairs[i].m < 0)
            throw Error(ErrorCode::InvalidArgument, "negative frequency pair");
        if (i > 0 && pairs[i - 1].m >= pairs[i].m)
            throw Error(ErrorCode::InvalidArgument, "second frequencies must strictly increase");
        bound = std::max({bound, pairs[i].n + 1, pairs[i].m + 1});
    }
    BivariatePoly f;
    f.pairs_ = std::move(pairs);
    f.bound_ = bound;
    return f;
}

ComplexTrigPoly BivariatePoly::slice_at(double x) const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<ComplexTrigPoly::Term> terms;
    terms.reserve(pairs_.size());
    for (const auto& pr : pairs_) {
        double theta = two_pi * frac_mul(pr.n, x);
        terms.push_back({pr.m, {std::cos(theta), std::sin(theta)}});
    }
    return ComplexTrigPoly(std::move(terms));
}

BivariatePoly PeakFamily::bivariate() const {
    switch (selector) {
        case PeakSelector::AtZeroHighP:
        case PeakSelector::AtHalfLowP:
            // 1 + e(y) + e(x + 2y)
            return BivariatePoly::make({{0, 0}, {0, 1}, {1, 2}});
        case PeakSelector::AtZeroLowP:
            // (1 + e(y))(1 + e(x) e(3y)) = 1 + e(y) + e(x)e(3y) + e(x)e(4y)
            return BivariatePoly::make({{0, 0}, {0, 1}, {1, 3}, {1, 4}});
        case PeakSelector::AtHalfHighP: {
            // (1 + e(x)e(ky))(1 + e(x)e((k+1)y))
            Frequency kk = k;
            return BivariatePoly::make({{0, 0}, {1, kk}, {1, kk + 1}, {2, 2 * kk + 1}});
        }
    }
    throw Error(ErrorCode::InvalidArgument, "bad selector");
}

double PeakFamily::peak_point() const {
    switch (selector) {
        case PeakSelector::AtZeroHighP:
        case PeakSelector::AtZeroLowP: return 0.0;
        case PeakSelector::AtHalfLowP:
        case PeakSelector::AtHalfHighP: return 0.5;
    }
    return 0.0;
}

namespace {

bool is_even_integer(double p, double tol = 1e-12) {
    double r = p / 2.0;
    return std::abs(r - std::round(r)) < tol;
}

}  // namespace

PeakFamily select_peak_family(double a, double p) {
    if (p <= 0.0) throw Error(ErrorCode::InvalidArgument, "p must be positive");
    const bool at_half = std::abs(a - 0.5) < 1e-12;
    const bool at_zero = std::abs(a) < 1e-12;
    if (!at_half && !at_zero)
        throw Error(ErrorCode::InvalidArgument, "peaking point must be 0 or 1/2");
    if (at_zero) {
        if (std::abs(p - 2.0) < 1e-12)
            throw Error(ErrorCode::IllegalRegime,
                        "no peaking with gap at 0 for p = 2");
        if (p > 2.0) return {PeakSelector::AtZeroHighP, 0};
        return {PeakSelector::AtZeroLowP, 0};
    }
    // a = 1/2
    if (is_even_integer(p))
        throw Error(ErrorCode::IllegalRegime,
                    "no full peaking at 1/2 for even integer p");
    if (p < 2.0) return {PeakSelector::AtHalfLowP, 0};
    int k = static_cast<int>(std::floor(p / 2.0)) + 1;
    if (k % 2 == 0) ++k;  // smallest odd k > p/2
    return {PeakSelector::AtHalfHighP, k};
}

SparseTrigPoly dirichlet(Frequency n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "Dirichlet kernel needs n >= 1");
    std::vector<Frequency> freqs(static_cast<std::size_t>(n));
    for (Frequency v = 0; v < n; ++v) freqs[static_cast<std::size_t>(v)] = v;
    return SparseTrigPoly::idempotent(std::move(freqs));
}

double marginal_integral(const BivariatePoly& f, double p, double x, const QuadratureSpec& spec) {
    return lp_integral(f.slice_at(x), p, IntervalUnion::full_circle(), spec);
}

SparseTrigPoly riesz_product(const BivariatePoly& f, Frequency R, int J) {
    if (J < 1) throw Error(ErrorCode::InvalidArgument, "J must be >= 1");
    if (R < 1) throw Error(ErrorCode::InvalidArgument, "R must be >= 1");
    // R > M(J+1) is sufficient for distinct expanded frequencies; smaller R
    // is allowed through and caught by the explicit distinctness check below
    SparseTrigPoly g = SparseTrigPoly::idempotent({0});
    Frequency Rj = 1;
    for (int j = 1; j <= J; ++j) {
        Rj = checked_freq_mul(Rj, R);
        std::vector<Frequency> freqs;
        freqs.reserve(f.pairs().size());
        for (const auto& pr : f.pairs())
            freqs.push_back(checked_freq_add(pr.n, checked_freq_mul(pr.m, Rj)));
        std::sort(freqs.begin(), freqs.end());
        for (std::size_t i = 1; i < freqs.size(); ++i)
            if (freqs[i] == freqs[i - 1])
                throw Error(ErrorCode::Collision, "duplicate frequency in Riesz factor");
        g = multiply_strict(g, SparseTrigPoly::idempotent(std::move(freqs)));
    }
    return g;
}

SparseTrigPoly dirichlet_grid_product(Frequency r, Frequency q, int L, bool star) {
    if (L < 1) throw Error(ErrorCode::InvalidArgument, "L must be >= 1");
    if (r < 1 || r >= q) throw Error(ErrorCode::InvalidArgument, "need 1 <= r < q");
    SparseTrigPoly R = dirichlet(r);
    const Frequency base = star ? 2 * q : q;
    Frequency power = 1;
    for (int l = 1; l < L; ++l) {
        power = checked_freq_mul(power, base);
        const Frequency s = checked_freq_add(power, 1);
        R = multiply_strict(R, dilate(dirichlet(r), s));
    }
    return R;
}

SparseTrigPoly pair_product(const SparseTrigPoly& Q, Frequency q) {
    if (q < 1) throw Error(ErrorCode::InvalidArgument, "q must be >= 1");
    if (Q.degree() >= 2 * q)
        throw Error(ErrorCode::DegreeTooLarge, "pair product needs degree(Q) < 2q");
    return multiply_strict(Q, dilate(Q, 2 * q + 1));
}

std::vector<double> base_alpha_from_dirichlet_power(Frequency r, int L, Frequency q) {
    if (r < 1 || r > q) throw Error(ErrorCode::InvalidArgument, "need 1 <= r <= q");
    if (L < 1) throw Error(ErrorCode::InvalidArgument, "L must be >= 1");
    // dense integer convolution: coefficients of D_r^L, degree L(r-1)
    if (static_cast<Frequency>(L) * (r - 1) > 100'000'000)
        throw Error(ErrorCode::Overflow, "D_r^L coefficient array too large");
    std::vector<double> coeff{1.0};
    for (int l = 0; l < L; ++l) {
        std::vector<double> next(coeff.size() + static_cast<std::size_t>(r) - 1, 0.0);
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            if (coeff[i] == 0.0) continue;
            for (std::size_t j = 0; j < static_cast<std::size_t>(r); ++j) next[i + j] += coeff[i];
        }
        coeff = std::move(next);
    }
    const double maj = static_cast<double>(L) * std::pow(static_cast<double>(r), L - 1);
    for (double c : coeff)
        if (c > 9.0e15) throw Error(ErrorCode::Overflow, "convolution coefficient exceeds 2^53");
    std::vector<double> alpha(static_cast<std::size_t>(q), 0.0);
    for (std::size_t i = 0; i < coeff.size(); ++i)
        alpha[i % static_cast<std::size_t>(q)] += coeff[i] / maj;
    for (double a : alpha)
        if (a > 1.0 + 1e-12)
            throw Error(ErrorCode::InvalidArgument, "folded coefficient exceeds the majorant");
    for (double& a : alpha) a = std::min(a, 1.0);
    return alpha;
}

SparseTrigPoly random_idempotent(const std::vector<double>& alpha, std::uint64_t seed) {
    for (double a : alpha)
        if (!(a >= 0.0 && a <= 1.0))
            throw Error(ErrorCode::InvalidArgument, "inclusion probabilities must be in [0,1]");
    SplitMix64 rng(seed);
    std::vector<Frequency> freqs;
    for (std::size_t k = 0; k < alpha.size(); ++k)
        if (rng.next_double() < alpha[k]) freqs.push_back(static_cast<Frequency>(k));
    std::vector<SparseTrigPoly::Term> terms;
    terms.reserve(freqs.size());
    for (Frequency h : freqs) terms.push_back({h, 1.0});
    return SparseTrigPoly::make(std::move(terms), PolyClass::Idempotent);
}

}  // namespace conc
