#pragma once

#include "conc/poly.hpp"
#include "conc/quadrature.hpp"

namespace conc {

struct GridSumReport {
    Frequency q;
    double p;
    double sigma;       // sum over k of |f(k/q)|^p
    double sigma_star;  // sum over k of |f((2k+1)/(2q))|^p
};

struct ConcentrationRatio {
    Frequency q;
    Frequency numerator;  // a (plain) or 2a+1 (star)
    bool star;
    double point_value;  // |f(point)|^p
    double grid_sum;
    double ratio;  // point_value / grid_sum, in [0, 1]
};

// sum_{k<q} |f(point_k)|^p over G_q (star = false) or G_q* (star = true).
double grid_sum(const SparseTrigPoly& f, double p, Frequency q, bool star);

GridSumReport grid_sums(const SparseTrigPoly& f, double p, Frequency q);

// Concentration ratio |f(a/q)|^p / Sigma_q (plain, 0 <= numerator < q) or
// |f(numerator/(2q))|^p / Sigma_q* (star, numerator odd in (0, 2q)).
// Throws ZeroGridSum if f vanishes identically on the grid.
ConcentrationRatio grid_ratio(const SparseTrigPoly& f, double p, Frequency q,
                              Frequency numerator, bool star);

// Multiplicative inverse of a mod m in [1, m); NotCoprime if gcd != 1.
Frequency modular_inverse(Frequency a, Frequency m);

// Moves a concentration witness from the base point (1/q resp. 1/(2q)) to
// target/q resp. target/(2q): R = project_mod(Q(b .), modulus) dilated by nu,
// where b inverts nu*target mod modulus (modulus = q plain, 2q star). The
// remap permutes the multiset of |Q| grid values and preserves idempotency;
// dilation by nu = Mq+1 (plain) or odd nu coprime to 2q (star) spreads the
// spectrum for gap requirements without changing grid values.
SparseTrigPoly remap_to_target(const SparseTrigPoly& Q, Frequency q, Frequency target,
                               bool star, Frequency dilation_nu = 1);

// K = Sigma_q(|f|^p) / Sigma_q*(|f|^p); ZeroGridSum if the star sum vanishes.
double grid_condition_K(const SparseTrigPoly& f, double p, Frequency q);

// Both sides of the three grid-stability inequalities for P with degree < q
// and a shift |t| < 1/2:
//  (i)  int |P(.+t) - P|^p  vs  (2 pi q |t|)^p int |P|^p   (must hold)
//  (ii) shifted grid sum    vs  grid sum                   (ratio reported)
//  (iii) sum |(|P(.+t)|^p - |P|^p)|  vs  q|t| * grid sum   (ratio reported)
// The constant in (ii)/(iii) is not explicit, so only empirical ratios are
// returned for those.
struct BernsteinReport {
    double shift;
    double integral_diff_lhs;   // (i) left
    double integral_diff_rhs;   // (i) right
    double shifted_grid_sum;    // (ii) left
    double grid_sum;            // (ii)/(iii) right-hand base quantity
    double perturbation_sum;    // (iii) left
    double ratio_shifted;       // (ii) lhs / grid_sum
    double ratio_perturbation;  // (iii) lhs / (q |t| grid_sum)
};
BernsteinReport bernstein_report(const SparseTrigPoly& P, double p, Frequency q, double t,
                                 const QuadratureSpec& spec = {});

}  // namespace conc
