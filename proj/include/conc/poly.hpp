#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "conc/errors.hpp"

namespace conc {

using Frequency = std::int64_t;

// Frequencies live in [0, 2^62]; constructions that would exceed the cap are
// rejected. Riesz products reach frequencies of order R^J * M, so the cap is
// enforced on every add/multiply rather than trusted to the caller.
inline constexpr Frequency kMaxFrequency = Frequency(1) << 62;

Frequency checked_freq_add(Frequency a, Frequency b);
Frequency checked_freq_mul(Frequency a, Frequency b);

enum class PolyClass { Idempotent, PositiveDefinite, General };

const char* poly_class_name(PolyClass c);
PolyClass poly_class_from_name(const std::string& s);

// Finite exponential sum  sum_h a_h e(h x)  with e(t) = exp(2 pi i t),
// nonnegative integer frequencies and nonnegative real coefficients.
// Idempotent <=> every coefficient equals 1 exactly.
class SparseTrigPoly {
public:
    struct Term {
        Frequency freq;
        double coeff;
    };

    SparseTrigPoly() = default;

    // Validates invariants: strictly increasing frequencies in range, finite
    // coefficients matching the class tag.
    static SparseTrigPoly make(std::vector<Term> terms, PolyClass cls);
    static SparseTrigPoly idempotent(std::vector<Frequency> freqs);

    const std::vector<Term>& terms() const { return terms_; }
    PolyClass poly_class() const { return class_; }
    bool empty() const { return terms_.empty(); }
    std::size_t spectrum_size() const { return terms_.size(); }

    Frequency degree() const { return terms_.empty() ? 0 : terms_.back().freq; }

    // Sum of coefficients = value at 0 = sup-norm bound.
    double coeff_sum() const;

    // Minimum gap between consecutive frequencies; kInfiniteGap for fewer
    // than two terms.
    static constexpr Frequency kInfiniteGap = std::numeric_limits<Frequency>::max();
    Frequency min_gap() const;

    std::complex<double> evaluate(double x) const;

private:
    std::vector<Term> terms_;
    PolyClass class_ = PolyClass::Idempotent;
};

// Exponential sum with arbitrary complex coefficients (derivatives, shifted
// differences). Only evaluation and integration are needed for these.
class ComplexTrigPoly {
public:
    struct Term {
        Frequency freq;
        std::complex<double> coeff;
    };

    ComplexTrigPoly() = default;
    explicit ComplexTrigPoly(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    Frequency degree() const;

    std::complex<double> evaluate(double x) const;

private:
    std::vector<Term> terms_;
};

// frac(h * x) computed exactly in 128-bit fixed point, so that e(h x) carries
// no argument-reduction error even for h near 2^62. `x` may be any real; it
// is wrapped into [0, 1) first.
double frac_mul(Frequency h, double x);

// Values at the q points k/q (half_shift = false) or (2k+1)/(2q)
// (half_shift = true), k = 0..q-1, via a table of 2q-th roots of unity and
// modular index arithmetic; no floating trig of large arguments.
std::vector<std::complex<double>> evaluate_grid(const SparseTrigPoly& f, Frequency q,
                                                bool half_shift);

// Exact product. The result is idempotent only when both inputs are and all
// frequency sums are distinct; any collision downgrades to positive definite.
SparseTrigPoly multiply(const SparseTrigPoly& f, const SparseTrigPoly& g);

// As multiply(), but a coefficient collision throws Collision. Used by the
// constructions whose downstream proofs require idempotency.
SparseTrigPoly multiply_strict(const SparseTrigPoly& f, const SparseTrigPoly& g);

// Spectrum scaled by m >= 1.
SparseTrigPoly dilate(const SparseTrigPoly& f, Frequency m);

// Frequencies folded mod q with coefficients summed; agrees with f on the
// grid {k/q}.
SparseTrigPoly project_mod(const SparseTrigPoly& f, Frequency q);

// Term-wise multiplication by 2 pi i h.
ComplexTrigPoly derivative(const SparseTrigPoly& f);

}  // namespace conc
