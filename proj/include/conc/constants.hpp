#pragma once

#include <vector>

#include "conc/errors.hpp"

namespace conc {

struct SeriesSpec {
    double tail_tol = 1e-10;      // certified bound on the truncation error
    long max_terms = 4'000'000;   // cap on directly summed terms

    void validate() const;
};

struct MinimizerResult {
    double argmin;
    double value;
    double bracket_width;
};

// zeta(lambda) for lambda > 1 by direct summation with an integral-majorant
// tail (plus the trapezoidal endpoint corrections of the majorant).
double zeta(double lambda, const SeriesSpec& spec = {});

// sup_{x>0} 2 sin^2(x)/(pi x), located by solving tan x = 2x and evaluating;
// approximately 0.4613.
double c2_constant();

// A(lambda, t) = sin(pi t)^(-lambda) * sum_{k>=0} |sin((2k+1) pi t)/(2k+1)|^lambda.
// Converges for lambda > 1 (Divergence otherwise). At lambda = 2 the slowly
// decaying tail is summed through the exact split sin^2 u = (1 - cos 2u)/2,
// whose oscillatory part admits an Abel-summation tail bound.
double A_series(double lambda, double t, const SeriesSpec& spec = {});

// B(lambda, t) = (pi t / sin(pi t))^lambda * (1 + 2 sum_{k>=1} |sin(k pi t)/(k pi t)|^lambda).
double B_series(double lambda, double t, const SeriesSpec& spec = {});

// exp(pi^2 kappa^2) * (1 + 2 sum_{k>=1} exp(-kappa^2 k^2 pi^2)); the Jacobi
// theta bound whose infimum over kappa dominates lim sup_lambda of the
// B minima.
double theta_beta(double kappa);

enum class SeriesKind { A, B };

// Minimizes A(lambda, .) or B(lambda, .) over (0.01, 0.49): a 200-point
// coarse scan selects the bracket (guarding against non-unimodality), then
// golden-section search narrows it to bracket_width <= tol.
MinimizerResult minimize_scalar(SeriesKind series, double lambda, double tol = 1e-9,
                                const SeriesSpec& spec = {});

// Maximizes 3 sin^4(pi t) / (pi^4 t^3) over (0, 1/2); the maximum exceeds
// 0.495 near t = 0.267 and equals 2 / min_t B(4, t).
struct C4Bound {
    double t_star;
    double bound;
};
C4Bound c4_lower();

// Fourier coefficients of 2^p |cos(pi y)|^p = sum_n (-1)^n c_n e(n y):
// c_0 by quadrature (cross-checked against Gamma(p+1)/Gamma(p/2+1)^2), then
// c_{n+1} = (n - p/2)/(n + p/2 + 1) c_n; c_n = c_{-n}.
double cos_p_fourier(double p, int n);
std::vector<double> cos_p_fourier_coeffs(double p, int n_max);

// G_p(x) = sum_n (-1)^n c_{kn} c_{(k+1)n} e(n x): the marginal integral of
// (1 + e_1(x)e_k(y))(1 + e_1(x)e_{k+1}(y)) as a real cosine series; requires
// k odd and k > p/2, p non-even.
double ms_marginal(double p, int k, double x);

}  // namespace conc
