#include "conc/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace conc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Neumaier-compensated accumulator: keeps the summation error near one
// epsilon of the coefficient mass, as the evaluation contract states.
struct Compensated {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

Frequency checked_freq_add(Frequency a, Frequency b) {
    if (a < 0 || b < 0 || a > kMaxFrequency - b)
        throw Error(ErrorCode::Overflow, "frequency sum exceeds 2^62");
    return a + b;
}

Frequency checked_freq_mul(Frequency a, Frequency b) {
    if (a < 0 || b < 0) throw Error(ErrorCode::Overflow, "negative frequency");
    if (a != 0 && b > kMaxFrequency / a)
        throw Error(ErrorCode::Overflow, "frequency product exceeds 2^62");
    return a * b;
}

const char* poly_class_name(PolyClass c) {
    switch (c) {
        case PolyClass::Idempotent: return "idempotent";
        case PolyClass::PositiveDefinite: return "positive_definite";
        case PolyClass::General: return "general";
    }
    return "general";
}

PolyClass poly_class_from_name(const std::string& s) {
    if (s == "idempotent") return PolyClass::Idempotent;
    if (s == "positive_definite") return PolyClass::PositiveDefinite;
    if (s == "general") return PolyClass::General;
    throw Error(ErrorCode::InvalidArgument, "unknown polynomial class '" + s + "'");
}

SparseTrigPoly SparseTrigPoly::make(std::vector<Term> terms, PolyClass cls) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (t.freq < 0 || t.freq > kMaxFrequency)
            throw Error(ErrorCode::Overflow, "frequency out of [0, 2^62]");
        if (!std::isfinite(t.coeff) || t.coeff < 0.0)
            throw Error(ErrorCode::InvalidArgument, "coefficients must be finite and >= 0");
        if (i > 0 && terms[i - 1].freq >= t.freq)
            throw Error(ErrorCode::InvalidArgument, "frequencies must be strictly increasing");
        if (cls == PolyClass::Idempotent && t.coeff != 1.0)
            throw Error(ErrorCode::InvalidArgument, "idempotent coefficients must equal 1");
        if (cls == PolyClass::PositiveDefinite && t.coeff <= 0.0)
            throw Error(ErrorCode::InvalidArgument, "positive definite coefficients must be > 0");
    }
    SparseTrigPoly p;
    p.terms_ = std::move(terms);
    p.class_ = cls;
    return p;
}

SparseTrigPoly SparseTrigPoly::idempotent(std::vector<Frequency> freqs) {
    std::sort(freqs.begin(), freqs.end());
    std::vector<Term> terms;
    terms.reserve(freqs.size());
    for (Frequency h : freqs) terms.push_back({h, 1.0});
    return make(std::move(terms), PolyClass::Idempotent);
}

double SparseTrigPoly::coeff_sum() const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.coeff;
    return s;
}

Frequency SparseTrigPoly::min_gap() const {
    if (terms_.size() < 2) return kInfiniteGap;
    Frequency g = kInfiniteGap;
    for (std::size_t i = 1; i < terms_.size(); ++i)
        g = std::min(g, terms_[i].freq - terms_[i - 1].freq);
    return g;
}

double frac_mul(Frequency h, double x) {
    x -= std::floor(x);
    if (x >= 1.0) x = 0.0;
    if (h == 0 || x == 0.0) return 0.0;
    int e;
    double m = std::frexp(x, &e);  // x = m * 2^e with m in [0.5, 1)
    auto mant = static_cast<unsigned __int128>(std::ldexp(m, 53));
    int shift = 53 - e;  // x = mant / 2^shift, shift >= 53 since x < 1
    unsigned __int128 prod = static_cast<unsigned __int128>(h) * mant;
    if (shift >= 128) return static_cast<double>(h) * x;  // h*x < 2^-13, no wrap
    unsigned __int128 mask = (static_cast<unsigned __int128>(1) << shift) - 1;
    unsigned __int128 fracbits = prod & mask;
    return std::ldexp(static_cast<double>(fracbits), -shift);
}

std::complex<double> SparseTrigPoly::evaluate(double x) const {
    Compensated re, im;
    for (const auto& t : terms_) {
        const double theta = kTwoPi * frac_mul(t.freq, x);
        re.add(t.coeff * std::cos(theta));
        im.add(t.coeff * std::sin(theta));
    }
    return {re.value(), im.value()};
}

ComplexTrigPoly::ComplexTrigPoly(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_)
        if (t.freq < 0 || t.freq > kMaxFrequency)
            throw Error(ErrorCode::Overflow, "frequency out of [0, 2^62]");
}

Frequency ComplexTrigPoly::degree() const {
    Frequency d = 0;
    for (const auto& t : terms_) d = std::max(d, t.freq);
    return d;
}

std::complex<double> ComplexTrigPoly::evaluate(double x) const {
    Compensated re, im;
    for (const auto& t : terms_) {
        const double theta = kTwoPi * frac_mul(t.freq, x);
        const std::complex<double> e{std::cos(theta), std::sin(theta)};
        const std::complex<double> v = t.coeff * e;
        re.add(v.real());
        im.add(v.imag());
    }
    return {re.value(), im.value()};
}

std::vector<std::complex<double>> evaluate_grid(const SparseTrigPoly& f, Frequency q,
                                                bool half_shift) {
    if (q < 1) throw Error(ErrorCode::InvalidArgument, "grid size q must be >= 1");
    if (q > (Frequency(1) << 29))
        throw Error(ErrorCode::ResourceLimit, "grid size too large for index arithmetic");
    const Frequency two_q = 2 * q;
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(two_q));
    for (Frequency j = 0; j < two_q; ++j) {
        double theta = kTwoPi * (static_cast<double>(j) / static_cast<double>(two_q));
        roots[static_cast<std::size_t>(j)] = {std::cos(theta), std::sin(theta)};
    }
    std::vector<Frequency> hmod;
    hmod.reserve(f.terms().size());
    for (const auto& t : f.terms()) hmod.push_back(t.freq % two_q);

    std::vector<std::complex<double>> values(static_cast<std::size_t>(q));
    for (Frequency k = 0; k < q; ++k) {
        const Frequency step = half_shift ? (2 * k + 1) : (2 * k);
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < hmod.size(); ++i) {
            Frequency idx = (hmod[i] * step) % two_q;  // both factors < 2^30
            acc += f.terms()[i].coeff * roots[static_cast<std::size_t>(idx)];
        }
        values[static_cast<std::size_t>(k)] = acc;
    }
    return values;
}

namespace {

SparseTrigPoly multiply_impl(const SparseTrigPoly& f, const SparseTrigPoly& g, bool strict) {
    std::vector<SparseTrigPoly::Term> prod;
    prod.reserve(f.terms().size() * g.terms().size());
    for (const auto& a : f.terms())
        for (const auto& b : g.terms())
            prod.push_back({checked_freq_add(a.freq, b.freq), a.coeff * b.coeff});
    std::sort(prod.begin(), prod.end(),
              [](const auto& x, const auto& y) { return x.freq < y.freq; });
    std::vector<SparseTrigPoly::Term> merged;
    merged.reserve(prod.size());
    bool collided = false;
    for (const auto& t : prod) {
        if (!merged.empty() && merged.back().freq == t.freq) {
            if (strict)
                throw Error(ErrorCode::Collision,
                            "frequency " + std::to_string(t.freq) + " produced twice");
            merged.back().coeff += t.coeff;
            collided = true;
        } else {
            merged.push_back(t);
        }
    }
    bool both_idem = f.poly_class() == PolyClass::Idempotent &&
                     g.poly_class() == PolyClass::Idempotent;
    PolyClass cls = (both_idem && !collided) ? PolyClass::Idempotent : PolyClass::PositiveDefinite;
    return SparseTrigPoly::make(std::move(merged), cls);
}

}  // namespace

SparseTrigPoly multiply(const SparseTrigPoly& f, const SparseTrigPoly& g) {
    return multiply_impl(f, g, false);
}

SparseTrigPoly multiply_strict(const SparseTrigPoly& f, const SparseTrigPoly& g) {
    return multiply_impl(f, g, true);
}

SparseTrigPoly dilate(const SparseTrigPoly& f, Frequency m) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "dilation factor must be >= 1");
    std::vector<SparseTrigPoly::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) terms.push_back({checked_freq_mul(t.freq, m), t.coeff});
    return SparseTrigPoly::make(std::move(terms), f.poly_class());
}

SparseTrigPoly project_mod(const SparseTrigPoly& f, Frequency q) {
    if (q < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 1");
    std::vector<SparseTrigPoly::Term> folded;
    folded.reserve(f.terms().size());
    for (const auto& t : f.terms()) folded.push_back({t.freq % q, t.coeff});
    std::sort(folded.begin(), folded.end(),
              [](const auto& x, const auto& y) { return x.freq < y.freq; });
    std::vector<SparseTrigPoly::Term> merged;
    bool collided = false;
    for (const auto& t : folded) {
        if (!merged.empty() && merged.back().freq == t.freq) {
            merged.back().coeff += t.coeff;
            collided = true;
        } else {
            merged.push_back(t);
        }
    }
    PolyClass cls = (f.poly_class() == PolyClass::Idempotent && !collided)
                        ? PolyClass::Idempotent
                        : PolyClass::PositiveDefinite;
    return SparseTrigPoly::make(std::move(merged), cls);
}

ComplexTrigPoly derivative(const SparseTrigPoly& f) {
    std::vector<ComplexTrigPoly::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        if (t.freq == 0) continue;
        terms.push_back({t.freq, std::complex<double>{0.0, kTwoPi * static_cast<double>(t.freq)} *
                                     t.coeff});
    }
    return ComplexTrigPoly(std::move(terms));
}

}  // namespace conc
