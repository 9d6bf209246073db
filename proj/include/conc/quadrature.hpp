#pragma once

#include <functional>

#include "conc/intervals.hpp"
#include "conc/poly.hpp"

namespace conc {

struct QuadratureSpec {
    int oversample = 4;        // >= 4 base panels per oscillation of the polynomial
    double rel_tol = 1e-9;     // relative tolerance on the whole integral
    int max_refinements = 30;  // bisection depth before NonConvergence

    void validate() const;
};

// integral over E of |f(x)|^p dx, panel-wise 8-node Gauss-Legendre on a base
// partition with panel width <= 1/(oversample*(degree+1)), refined by
// bisection wherever two successive levels disagree (|f|^p loses smoothness
// at zeros of f when p < 2). Certified to spec.rel_tol; throws NonConvergence
// if max_refinements is exhausted.
double lp_integral(const SparseTrigPoly& f, double p, const IntervalUnion& E,
                   const QuadratureSpec& spec = {});
double lp_integral(const ComplexTrigPoly& f, double p, const IntervalUnion& E,
                   const QuadratureSpec& spec = {});

// Same engine over a single (possibly unnormalized) interval [lo, hi],
// hi - lo <= 1; the integrand is periodic so the window may cross 0.
double lp_integral_window(const SparseTrigPoly& f, double p, double lo, double hi,
                          const QuadratureSpec& spec = {});
double lp_integral_window(const ComplexTrigPoly& f, double p, double lo, double hi,
                          const QuadratureSpec& spec = {});

// Exact integral over T of |f|^(2k) via k-1 self-convolutions and Parseval:
// the coefficients of f^k are integers for idempotents, so this is an exact
// oracle against which the quadrature is checked.
double parseval_even_norm(const SparseTrigPoly& f, int k);

// Independent brute-force check used by certificates: midpoint Riemann sums
// on a uniform grid of at least oversample * 2 * (degree+1) points. For the
// full circle this is exact for band-limited integrands with even p; over a
// sub-union boundary panels enter with their exact overlap fraction.
struct RiemannRatio {
    double integral_on_set;
    double integral_total;
    double ratio;
};
RiemannRatio riemann_lp_ratio(const SparseTrigPoly& f, double p, const IntervalUnion& E,
                              int oversample = 8);

}  // namespace conc
