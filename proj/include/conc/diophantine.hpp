#pragma once

#include <vector>

#include "conc/intervals.hpp"
#include "conc/poly.hpp"

namespace conc {

// An irreducible fraction on G_q (numerator/q) or G_q* (numerator/(2q),
// numerator odd) close to a target point, with its quality certificate.
struct GridApproximation {
    Frequency numerator;
    Frequency q;
    bool star;
    double value;   // numerator/q or numerator/(2q)
    double error;   // |xi - value| for point targets, 0 for set targets
    double theta;   // quality parameter: error <= theta/q^2
    double density; // neighborhood density inside the target set (set search)
    Frequency coprime_witness_num;  // gcd(numerator, modulus), recorded
    Frequency coprime_witness_q;    // gcd(q, coprime_to), recorded
};

// First n continued-fraction convergents p_i/q_i of xi in (0, 1); each
// satisfies |xi - p_i/q_i| < 1/q_i^2. Throws RationalInput if the expansion
// terminates before n convergents (xi rational at working precision).
struct Convergent {
    Frequency p;
    Frequency q;
};
std::vector<Convergent> convergents(double xi, int n);

// Smallest q in [q_min, q_max] with gcd(q, coprime_to) = 1 whose nearest
// admissible grid point (irreducible, odd numerator on the star grid) lies
// within theta/q^2 of xi. NotFound when the window is exhausted; the
// underlying existence results are asymptotic, so a finite search must fail
// loudly rather than promise success.
GridApproximation best_grid_approx(double xi, double theta, Frequency q_min, Frequency q_max,
                                   bool star, Frequency coprime_to = 1);

// A grid fraction whose theta/q^2 neighborhood has relative density >= 1-eta
// inside E, density computed exactly from interval arithmetic; smallest
// admissible q wins, numerators scanned in increasing order.
GridApproximation locate_in_set(const IntervalUnion& E, double theta, double eta,
                                Frequency q_min, Frequency q_max, bool star,
                                Frequency coprime_to = 1);

}  // namespace conc
