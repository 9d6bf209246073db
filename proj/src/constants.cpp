#include "conc/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conc/poly.hpp"
#include "conc/quadrature.hpp"

namespace conc {

namespace {

constexpr double kPi = std::numbers::pi;

double checked_lambda(double lambda) {
    if (!(lambda > 1.0))
        throw Error(ErrorCode::Divergence, "series diverges for lambda <= 1");
    return lambda;
}

double checked_t(double t) {
    if (!(t > 0.0 && t < 0.5))
        throw Error(ErrorCode::InvalidArgument, "t must lie in (0, 1/2)");
    return t;
}

// Tail of sum_{k>K} w_k cos(k phi + psi) for decreasing positive weights,
// by Abel summation with the closed form of the cosine partial sums:
//   estimate = -w_{K+1} sin((K+1/2) phi + psi) / (2 sin(phi/2)),
//   |error| <= (w_{K+1} - w_{K+2}) / (2 sin^2(phi/2)).
struct CosTail {
    double estimate;
    double bound;
};
CosTail cos_series_tail(long K, double phi, double psi, double w1, double w2) {
    double s = std::abs(std::sin(0.5 * phi));
    if (s < 1e-15) s = 1e-15;
    const double arg = std::fmod((static_cast<double>(K) + 0.5) * phi + psi, 2.0 * kPi);
    CosTail t;
    t.estimate = -w1 * std::sin(arg) / (2.0 * s);
    t.bound = (w1 - w2) / (2.0 * s * s);
    return t;
}

// Euler-Maclaurin for sum_{k>K} (a k + b)^(-lambda), smooth monotone terms:
// integral + half endpoint - derivative/12; remainder far below the terms
// kept at the K used here.
double smooth_power_tail(long K, double a, double b, double lambda) {
    const double x = a * static_cast<double>(K + 1) + b;
    const double integral = std::pow(x, 1.0 - lambda) / (a * (lambda - 1.0));
    const double half = 0.5 * std::pow(x, -lambda);
    const double deriv = -lambda * a * std::pow(x, -lambda - 1.0);
    return integral + half - deriv / 12.0;
}

}  // namespace

void SeriesSpec::validate() const {
    if (!(tail_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tail_tol must be positive");
    if (max_terms < 16) throw Error(ErrorCode::InvalidArgument, "max_terms too small");
}

double zeta(double lambda, const SeriesSpec& spec) {
    checked_lambda(lambda);
    spec.validate();
    // direct sum to K, integral tail with endpoint corrections
    const long K = std::min<long>(spec.max_terms, 20'000);
    double s = 0.0;
    for (long n = K; n >= 1; --n) s += std::pow(static_cast<double>(n), -lambda);
    return s + smooth_power_tail(K, 1.0, 0.0, lambda);
}

double c2_constant() {
    // stationary point of 2 sin^2(x)/(pi x): tan x = 2x, unique in
    // (pi/4, pi/2)
    double lo = 0.8, hi = kPi / 2.0 - 1e-9;
    auto g = [](double x) { return std::tan(x) - 2.0 * x; };
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    const double x = 0.5 * (lo + hi);
    const double s = std::sin(x);
    return 2.0 * s * s / (kPi * x);
}

double A_series(double lambda, double t, const SeriesSpec& spec) {
    checked_lambda(lambda);
    checked_t(t);
    spec.validate();
    const double pref = std::pow(std::sin(kPi * t), -lambda);
    // the certified truncation error applies to the returned value
    const double tol = spec.tail_tol / std::max(pref, 1.0);

    if (std::abs(lambda - 2.0) < 1e-12) {
        // sin^2 u = (1 - cos 2u)/2: the monotone half gets an Euler-Maclaurin
        // tail, the oscillatory half the Abel tail estimate. cos((2k+1)theta)
        // = cos(k phi + psi) with phi = 4 pi t, psi = 2 pi t.
        double s = std::abs(std::sin(2.0 * kPi * t));
        if (s < 1e-15) s = 1e-15;
        long K = static_cast<long>(std::ceil(0.5 * std::cbrt(2.0 / (tol * s * s)))) + 8;
        K = std::min<long>(std::max<long>(K, 64), spec.max_terms);
        auto w = [](long k) {
            const double u = static_cast<double>(2 * k + 1);
            return 1.0 / (u * u);
        };
        const CosTail ct = cos_series_tail(K, 4.0 * kPi * t, 2.0 * kPi * t, w(K + 1), w(K + 2));
        if (0.5 * ct.bound > tol)
            throw Error(ErrorCode::NonConvergence, "tail cannot be certified within max_terms");
        double direct = 0.0;
        for (long k = K; k >= 0; --k) {
            const double sn = std::sin(kPi * frac_mul(2 * k + 1, t));
            direct += sn * sn * w(k);
        }
        const double tail = 0.5 * smooth_power_tail(K, 2.0, 1.0, 2.0) - 0.5 * ct.estimate;
        return pref * (direct + tail);
    }

    // |sin|^lambda <= 1 termwise: majorant tail sum_{k>K} (2k+1)^(-lambda)
    long K = static_cast<long>(
        std::ceil(0.5 * (std::pow(2.0 * (lambda - 1.0) * tol, 1.0 / (1.0 - lambda)) - 1.0)));
    K = std::max<long>(K, 16);
    if (K > spec.max_terms)
        throw Error(ErrorCode::NonConvergence,
                    "tail cannot be certified within max_terms for this lambda");
    double sum = 0.0;
    for (long k = K; k >= 0; --k) {
        const double u = static_cast<double>(2 * k + 1);
        const double sn = std::abs(std::sin(kPi * frac_mul(2 * k + 1, t)));
        sum += std::pow(sn / u, lambda);
    }
    return pref * sum;
}

double B_series(double lambda, double t, const SeriesSpec& spec) {
    checked_lambda(lambda);
    checked_t(t);
    spec.validate();
    const double pit = kPi * t;
    const double pref = std::pow(pit / std::sin(pit), lambda);
    const double tol = spec.tail_tol / std::max(pref, 1.0);

    double bracket;
    if (std::abs(lambda - 2.0) < 1e-12) {
        // same split as in A_series: cos(2 k pi t) = cos(k phi) with
        // phi = 2 pi t, weights (k pi t)^-2
        double s = std::sin(pit);
        if (s < 1e-15) s = 1e-15;
        const double tol_b = tol * pit * pit;  // weights carry 1/(pi t)^2
        long K = static_cast<long>(std::ceil(std::cbrt(1.0 / (tol_b * s * s)))) + 8;
        K = std::min<long>(std::max<long>(K, 64), spec.max_terms);
        auto w = [](long k) {
            const double u = static_cast<double>(k);
            return 1.0 / (u * u);
        };
        const CosTail ct = cos_series_tail(K, 2.0 * kPi * t, 0.0, w(K + 1), w(K + 2));
        if (0.5 * ct.bound > tol_b)
            throw Error(ErrorCode::NonConvergence, "tail cannot be certified within max_terms");
        double direct = 0.0;
        for (long k = K; k >= 1; --k) {
            const double sn = std::sin(kPi * frac_mul(k, t));
            direct += sn * sn * w(k);
        }
        const double tail = 0.5 * smooth_power_tail(K, 1.0, 0.0, 2.0) - 0.5 * ct.estimate;
        bracket = 1.0 + 2.0 * (direct + tail) / (pit * pit);
    } else {
        long K = static_cast<long>(std::ceil(
            std::pow((lambda - 1.0) * tol * std::pow(pit, lambda) / 2.0,
                     1.0 / (1.0 - lambda))));
        K = std::max<long>(K, 16);
        if (K > spec.max_terms)
            throw Error(ErrorCode::NonConvergence,
                        "tail cannot be certified within max_terms for this lambda");
        double sum = 0.0;
        for (long k = K; k >= 1; --k) {
            const double sn = std::abs(std::sin(kPi * frac_mul(k, t)));
            sum += std::pow(sn / (static_cast<double>(k) * pit), lambda);
        }
        bracket = 1.0 + 2.0 * sum;
    }
    return pref * bracket;
}

double theta_beta(double kappa) {
    if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
    const double a = kappa * kappa * kPi * kPi;
    double sum = 0.0;
    for (long k = 1;; ++k) {
        const double term = std::exp(-a * static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < 1e-18) break;
        if (k > 100'000'000)
            throw Error(ErrorCode::NonConvergence, "theta series did not reach cutoff");
    }
    return std::exp(a) * (1.0 + 2.0 * sum);
}

namespace {

double series_value(SeriesKind kind, double lambda, double t, const SeriesSpec& spec) {
    return kind == SeriesKind::A ? A_series(lambda, t, spec) : B_series(lambda, t, spec);
}

template <class F>
MinimizerResult golden_minimize(const F& f, double lo, double hi, double tol) {
    // coarse scan: endpoints of both series blow up, and unimodality is not
    // assumed
    const int scan = 200;
    double best_t = lo, best_v = f(lo);
    for (int i = 1; i <= scan; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / scan;
        const double v = f(t);
        if (v < best_v) {
            best_v = v;
            best_t = t;
        }
    }
    double a = std::max(lo, best_t - (hi - lo) / scan);
    double b = std::min(hi, best_t + (hi - lo) / scan);
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double tm = 0.5 * (a + b);
    return {tm, f(tm), b - a};
}

}  // namespace

MinimizerResult minimize_scalar(SeriesKind series, double lambda, double tol,
                                const SeriesSpec& spec) {
    checked_lambda(lambda);
    auto f = [&](double t) { return series_value(series, lambda, t, spec); };
    return golden_minimize(f, 0.01, 0.49, tol);
}

C4Bound c4_lower() {
    auto neg = [](double t) {
        const double s = std::sin(kPi * t);
        return -3.0 * s * s * s * s / (kPi * kPi * kPi * kPi * t * t * t);
    };
    MinimizerResult m = golden_minimize(neg, 1e-4, 0.5 - 1e-9, 1e-10);
    return {m.argmin, -m.value};
}

namespace {

double cos_p_c0(double p) {
    if (!(p > 0.0)) throw Error(ErrorCode::InvalidArgument, "p must be positive");
    // |1 + e(y)| = |2 cos(pi y)|, so c_0 is an L^p integral of an idempotent
    const double by_quadrature =
        lp_integral(SparseTrigPoly::idempotent({0, 1}), p, IntervalUnion::full_circle(),
                    QuadratureSpec{4, 1e-11, 40});
    const double by_gamma = std::tgamma(p + 1.0) / std::pow(std::tgamma(0.5 * p + 1.0), 2.0);
    if (std::abs(by_quadrature - by_gamma) > 1e-8 * by_gamma)
        throw Error(ErrorCode::NonConvergence, "c_0 quadrature and Beta closed form disagree");
    return by_quadrature;
}

}  // namespace

std::vector<double> cos_p_fourier_coeffs(double p, int n_max) {
    if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 0");
    std::vector<double> c(static_cast<std::size_t>(n_max) + 1);
    c[0] = cos_p_c0(p);
    for (int n = 0; n < n_max; ++n)
        c[static_cast<std::size_t>(n) + 1] =
            (static_cast<double>(n) - 0.5 * p) / (static_cast<double>(n) + 0.5 * p + 1.0) *
            c[static_cast<std::size_t>(n)];
    return c;
}

double cos_p_fourier(double p, int n) {
    if (n < 0) n = -n;  // c_n = c_{-n}
    return cos_p_fourier_coeffs(p, n).back();
}

double ms_marginal(double p, int k, double x) {
    if (!(p > 2.0)) throw Error(ErrorCode::InvalidArgument, "requires p > 2");
    double half = p / 2.0;
    if (std::abs(half - std::round(half)) < 1e-12)
        throw Error(ErrorCode::InvalidArgument, "requires p not an even integer");
    if (k % 2 == 0 || static_cast<double>(k) <= half)
        throw Error(ErrorCode::InvalidArgument, "requires k odd and k > p/2");

    // |c_n| ~ n^-(p+1): products c_{kn} c_{(k+1)n} decay like n^(-2(p+1)),
    // so a fixed cutoff with a monitored last term is ample
    const int n_cut = 600;
    std::vector<double> c = cos_p_fourier_coeffs(p, (k + 1) * n_cut);
    double sum = c[0] * c[0];
    double last = 0.0;
    for (int n = 1; n <= n_cut; ++n) {
        const double prod = c[static_cast<std::size_t>(k * n)] *
                            c[static_cast<std::size_t>((k + 1) * n)];
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        sum += 2.0 * sign * prod * std::cos(2.0 * kPi * frac_mul(n, x));
        last = std::abs(prod);
    }
    if (last > 1e-14 * std::abs(sum))
        throw Error(ErrorCode::NonConvergence, "coefficient series tail not negligible");
    return sum;
}

}  // namespace conc
