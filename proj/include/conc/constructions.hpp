#pragma once

#include <cstdint>
#include <vector>

#include "conc/poly.hpp"
#include "conc/quadrature.hpp"

namespace conc {

// Bivariate idempotent  f(x, y) = sum_k e(n_k x + m_k y)  with unit
// coefficients and the m_k strictly increasing. These are the seeds of the
// Riesz-product constructions; the strict monotonicity of the second
// frequency is what keeps the expanded products collision-free for large R.
class BivariatePoly {
public:
    struct Pair {
        Frequency n;
        Frequency m;
    };

    static BivariatePoly make(std::vector<Pair> pairs);

    const std::vector<Pair>& pairs() const { return pairs_; }
    // Smallest M with every n, m < M.
    Frequency bound() const { return bound_; }

    // The slice y -> f(x, y): an exponential sum in y with unimodular
    // coefficients e(n_k x).
    ComplexTrigPoly slice_at(double x) const;

private:
    std::vector<Pair> pairs_;
    Frequency bound_ = 0;
};

// The peaking families. Selection depends on the peak location and the
// exponent regime:
//   AtZeroHighP   (p > 2):          1 + e(y) + e(x + 2y), marginal max at 0
//   AtHalfLowP    (0 < p < 2):      1 + e(y) + e(x + 2y), marginal max at 1/2
//   AtHalfHighP   (p > 2, p not even, k odd > p/2):
//                 (1 + e_1(x) e_k(y)) (1 + e_1(x) e_{k+1}(y)), max at 1/2
//   AtZeroLowP    (0 < p < 2):      (1 + e_1(y)) (1 + e_1(x) e_3(y)), max at 0
enum class PeakSelector { AtZeroHighP, AtHalfLowP, AtHalfHighP, AtZeroLowP };

struct PeakFamily {
    PeakSelector selector;
    int k = 0;  // only for AtHalfHighP; must be odd and > p/2

    BivariatePoly bivariate() const;
    double peak_point() const;  // 0 or 1/2
};

// Picks the family for peaking at `a` (0 or 1/2) with exponent p; throws
// IllegalRegime for (a=0, p=2) and (a=1/2, p an even integer).
PeakFamily select_peak_family(double a, double p);

// Dirichlet kernel D_n = sum_{v=0}^{n-1} e_v.
SparseTrigPoly dirichlet(Frequency n);

// Marginal integral F_p(x) = int_0^1 |f(x, y)|^p dy.
double marginal_integral(const BivariatePoly& f, double p, double x,
                         const QuadratureSpec& spec = {});

// Riesz product g(x) = prod_{j=1}^J f(x, R^j x), expanded to a sparse
// polynomial with K^J terms. Requires R > M(J+1); idempotency is certified by
// an explicit distinctness check of all expanded frequencies (Collision
// otherwise, e.g. when the caller bypasses the R condition).
SparseTrigPoly riesz_product(const BivariatePoly& f, Frequency R, int J);

// R(x) = D_r(x) * prod_{l=1}^{L-1} D_r(s_l x) with s_l = (2q)^l + 1 (star)
// or q^l + 1 (plain). Since s_l = 1 mod 2q resp. mod q, |R| equals |D_r|^L
// on the corresponding grid.
SparseTrigPoly dirichlet_grid_product(Frequency r, Frequency q, int L, bool star);

// R = Q(x) Q((2q+1)x); |R| = |Q|^2 on both grids G_q and G_q*. Requires
// degree(Q) < 2q.
SparseTrigPoly pair_product(const SparseTrigPoly& Q, Frequency q);

// alpha_k = (mod-q folded coefficients of D_r^L) / M with M = L r^(L-1),
// a majorant of those coefficients; sum(alpha) = r/L exactly.
std::vector<double> base_alpha_from_dirichlet_power(Frequency r, int L, Frequency q);

// Frequency k is included independently with probability alpha_k, drawn from
// a SplitMix64 stream seeded with `seed`; identical seeds give identical
// polynomials on every platform. The result may be empty.
SparseTrigPoly random_idempotent(const std::vector<double>& alpha, std::uint64_t seed);

}  // namespace conc
