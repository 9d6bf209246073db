#include "conc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace conc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 8-node Gauss-Legendre rule on [-1, 1]; exact through degree 15.
constexpr double kGlNode[8] = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975362};
constexpr double kGlWeight[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// Neumaier compensated accumulator; the quadrature sums panels serially in a
// fixed order, so results are deterministic.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

template <class Integrand>
double gl8(const Integrand& g, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += kGlWeight[i] * g(c + h * kGlNode[i]);
    return s * h;
}

template <class Integrand>
double refine_panel(const Integrand& g, double a, double b, double whole, double tol, int depth,
                    int max_depth) {
    const double m = 0.5 * (a + b);
    const double left = gl8(g, a, m);
    const double right = gl8(g, m, b);
    const double two = left + right;
    if (std::abs(whole - two) <= tol || (b - a) < 1e-15) return two;
    if (depth >= max_depth)
        throw Error(ErrorCode::NonConvergence,
                    "quadrature panel did not converge within max_refinements");
    return refine_panel(g, a, m, left, 0.5 * tol, depth + 1, max_depth) +
           refine_panel(g, m, b, right, 0.5 * tol, depth + 1, max_depth);
}

// Adaptive integration of a nonnegative integrand over a list of windows.
// Two passes: a coarse pass fixes the global scale, then each base panel is
// refined against a tolerance budget proportional to its width.
template <class Integrand>
double integrate_windows(const Integrand& g, const std::vector<std::pair<double, double>>& windows,
                         Frequency degree, const QuadratureSpec& spec) {
    spec.validate();
    double total_width = 0.0;
    for (const auto& [lo, hi] : windows) total_width += hi - lo;
    if (total_width <= 0.0) return 0.0;

    const double max_panel =
        1.0 / (static_cast<double>(spec.oversample) * (static_cast<double>(degree) + 1.0));

    struct Panel {
        double a, b, coarse;
    };
    std::vector<Panel> panels;
    Accumulator coarse_total;
    for (const auto& [lo, hi] : windows) {
        const double width = hi - lo;
        const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(width / max_panel)));
        const double w = width / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double a = lo + static_cast<double>(i) * w;
            const double b = (i + 1 == n) ? hi : a + w;
            const double est = gl8(g, a, b);
            panels.push_back({a, b, est});
            coarse_total.add(std::abs(est));
        }
    }
    const double scale = coarse_total.value();
    if (scale == 0.0) return 0.0;

    Accumulator result;
    for (const auto& pnl : panels) {
        const double tol = spec.rel_tol * scale * ((pnl.b - pnl.a) / total_width);
        result.add(refine_panel(g, pnl.a, pnl.b, pnl.coarse, tol, 0, spec.max_refinements));
    }
    return result.value();
}

std::vector<std::pair<double, double>> windows_of(const IntervalUnion& E) {
    std::vector<std::pair<double, double>> w;
    w.reserve(E.intervals().size());
    for (const auto& iv : E.intervals()) w.push_back({iv.left, iv.right});
    return w;
}

template <class Poly>
double lp_over_windows(const Poly& f, double p, std::vector<std::pair<double, double>> windows,
                       const QuadratureSpec& spec) {
    if (p <= 0.0) throw Error(ErrorCode::InvalidArgument, "exponent p must be positive");
    double width = 0.0;
    for (const auto& [lo, hi] : windows) width += hi - lo;
    const double panels =
        width * static_cast<double>(spec.oversample) * (static_cast<double>(f.degree()) + 1.0);
    if (panels > 2.0e7 || panels * static_cast<double>(f.terms().size()) > 1.0e8)
        throw Error(ErrorCode::ResourceLimit,
                    "certified quadrature would exceed the evaluation budget");
    const double half_p = 0.5 * p;
    auto integrand = [&](double x) { return std::pow(std::norm(f.evaluate(x)), half_p); };
    return integrate_windows(integrand, windows, f.degree(), spec);
}

}  // namespace

void QuadratureSpec::validate() const {
    if (oversample < 4) throw Error(ErrorCode::InvalidArgument, "oversample must be >= 4");
    if (!(rel_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "rel_tol must be positive");
    if (max_refinements < 1)
        throw Error(ErrorCode::InvalidArgument, "max_refinements must be >= 1");
}

double lp_integral(const SparseTrigPoly& f, double p, const IntervalUnion& E,
                   const QuadratureSpec& spec) {
    return lp_over_windows(f, p, windows_of(E), spec);
}

double lp_integral(const ComplexTrigPoly& f, double p, const IntervalUnion& E,
                   const QuadratureSpec& spec) {
    return lp_over_windows(f, p, windows_of(E), spec);
}

double lp_integral_window(const SparseTrigPoly& f, double p, double lo, double hi,
                          const QuadratureSpec& spec) {
    if (hi - lo > 1.0 + 1e-12)
        throw Error(ErrorCode::InvalidArgument, "window longer than one period");
    return lp_over_windows(f, p, {{lo, hi}}, spec);
}

double lp_integral_window(const ComplexTrigPoly& f, double p, double lo, double hi,
                          const QuadratureSpec& spec) {
    if (hi - lo > 1.0 + 1e-12)
        throw Error(ErrorCode::InvalidArgument, "window longer than one period");
    return lp_over_windows(f, p, {{lo, hi}}, spec);
}

double parseval_even_norm(const SparseTrigPoly& f, int k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
    if (f.empty()) return 0.0;
    // coefficient magnitudes can grow like (term count)^k; 2^53 is the limit
    // of exact integer representation in double
    constexpr double kCoeffLimit = 9.007199254740992e15;
    SparseTrigPoly power = f;
    for (int i = 1; i < k; ++i) {
        power = multiply(power, f);
        for (const auto& t : power.terms())
            if (t.coeff > kCoeffLimit)
                throw Error(ErrorCode::Overflow, "convolution coefficient exceeds 2^53");
    }
    Accumulator sum;
    for (const auto& t : power.terms()) sum.add(t.coeff * t.coeff);
    return sum.value();
}

RiemannRatio riemann_lp_ratio(const SparseTrigPoly& f, double p, const IntervalUnion& E,
                              int oversample) {
    if (p <= 0.0) throw Error(ErrorCode::InvalidArgument, "exponent p must be positive");
    if (oversample < 1) throw Error(ErrorCode::InvalidArgument, "oversample must be >= 1");
    const double points_needed =
        static_cast<double>(oversample) * 2.0 * (static_cast<double>(f.degree()) + 1.0);
    if (points_needed > 2.0e8)
        throw Error(ErrorCode::ResourceLimit, "brute-force grid would exceed 2e8 points");
    const auto n = static_cast<std::size_t>(std::max(16.0, points_needed));
    const double dx = 1.0 / static_cast<double>(n);
    const double half_p = 0.5 * p;

    // Midpoint samples x_j = (j + 1/2)/n. Each term advances by the fixed
    // rotation e(h/n); the recurrence is re-seeded from sincos every 4096
    // steps, keeping the phase drift near machine precision over millions of
    // points.
    const auto& terms = f.terms();
    std::vector<std::complex<double>> cur(terms.size()), step(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) {
        double ths = kTwoPi * frac_mul(terms[t].freq, dx);
        step[t] = {std::cos(ths), std::sin(ths)};
    }
    auto resync = [&](std::size_t j) {
        const double x = (static_cast<double>(j) + 0.5) * dx;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            double th = kTwoPi * frac_mul(terms[t].freq, x);
            cur[t] = {std::cos(th), std::sin(th)};
        }
    };

    Accumulator total, on_set;
    for (std::size_t j = 0; j < n; ++j) {
        if ((j & 4095u) == 0u)
            resync(j);
        else
            for (std::size_t t = 0; t < terms.size(); ++t) cur[t] *= step[t];
        std::complex<double> v{0.0, 0.0};
        for (std::size_t t = 0; t < terms.size(); ++t) v += terms[t].coeff * cur[t];
        const double w = std::pow(std::norm(v), half_p);
        total.add(w * dx);
        const double x = static_cast<double>(j) * dx;
        const double overlap = E.intersection_length(x, x + dx);
        if (overlap > 0.0) on_set.add(w * overlap);
    }
    RiemannRatio r;
    r.integral_on_set = on_set.value();
    r.integral_total = total.value();
    r.ratio = r.integral_total > 0.0 ? r.integral_on_set / r.integral_total : 0.0;
    return r;
}

}  // namespace conc
