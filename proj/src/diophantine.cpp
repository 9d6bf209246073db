#include "conc/diophantine.hpp"

#include <cmath>
#include <numeric>

#include "conc/errors.hpp"

namespace conc {

std::vector<Convergent> convergents(double xi, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "need n >= 1");
    if (!(xi > 0.0 && xi < 1.0))
        throw Error(ErrorCode::InvalidArgument, "xi must lie in (0, 1)");
    std::vector<Convergent> out;
    out.reserve(static_cast<std::size_t>(n));
    // p_i = a_i p_{i-1} + p_{i-2}, q_i likewise
    Frequency p_prev = 1, q_prev = 0;  // p_{-1}/q_{-1}
    Frequency p_cur = 0, q_cur = 1;    // p_0/q_0 = a_0 = 0
    double frac = xi;
    while (static_cast<int>(out.size()) < n) {
        if (frac < 1e-15)
            throw Error(ErrorCode::RationalInput,
                        "continued fraction terminated: input is rational at working precision");
        const double inv = 1.0 / frac;
        if (inv > 9.0e15)
            throw Error(ErrorCode::RationalInput,
                        "partial quotient overflow: input is rational at working precision");
        const auto a = static_cast<Frequency>(std::floor(inv));
        frac = inv - std::floor(inv);
        const Frequency p_next = checked_freq_add(checked_freq_mul(a, p_cur), p_prev);
        const Frequency q_next = checked_freq_add(checked_freq_mul(a, q_cur), q_prev);
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        out.push_back({p_cur, q_cur});
    }
    return out;
}

namespace {

GridApproximation make_point_approx(double xi, Frequency num, Frequency q, bool star,
                                    double theta, Frequency coprime_to) {
    GridApproximation g{};
    g.numerator = num;
    g.q = q;
    g.star = star;
    const double denom = star ? 2.0 * static_cast<double>(q) : static_cast<double>(q);
    g.value = static_cast<double>(num) / denom;
    g.error = std::abs(xi - g.value);
    g.theta = theta;
    g.density = 1.0;
    g.coprime_witness_num = std::gcd(num, star ? 2 * q : q);
    g.coprime_witness_q = std::gcd(q, coprime_to);
    return g;
}

bool admissible_numerator(Frequency num, Frequency q, bool star) {
    if (star) return num > 0 && num < 2 * q && num % 2 == 1 && std::gcd(num, 2 * q) == 1;
    return num >= 0 && num < q && std::gcd(num, q) == 1;
}

}  // namespace

GridApproximation best_grid_approx(double xi, double theta, Frequency q_min, Frequency q_max,
                                   bool star, Frequency coprime_to) {
    if (q_min < 2) throw Error(ErrorCode::InvalidArgument, "q_min must be >= 2");
    if (!(theta > 0.0)) throw Error(ErrorCode::InvalidArgument, "theta must be positive");
    xi -= std::floor(xi);
    for (Frequency q = q_min; q <= q_max; ++q) {
        if (std::gcd(q, coprime_to) != 1) continue;
        const double allowed = theta / (static_cast<double>(q) * static_cast<double>(q));
        const double scaled = xi * (star ? 2.0 * static_cast<double>(q) : static_cast<double>(q));
        const auto center = static_cast<Frequency>(std::llround(scaled));
        // walk outward from the nearest numerator until admissibility and the
        // error budget part ways
        for (Frequency off = 0;; ++off) {
            bool progressed = false;
            for (const Frequency num : {center - off, center + off}) {
                const double denom =
                    star ? 2.0 * static_cast<double>(q) : static_cast<double>(q);
                const double err = std::abs(xi - static_cast<double>(num) / denom);
                if (err > allowed) continue;
                progressed = true;
                if (admissible_numerator(num, q, star))
                    return make_point_approx(xi, num, q, star, theta, coprime_to);
                if (off == 0) break;  // center tried once
            }
            if (!progressed) break;  // every remaining numerator is out of budget
        }
    }
    throw Error(ErrorCode::NotFound,
                "no admissible grid point within theta/q^2 in the given q window");
}

GridApproximation locate_in_set(const IntervalUnion& E, double theta, double eta,
                                Frequency q_min, Frequency q_max, bool star,
                                Frequency coprime_to) {
    if (!(theta > 0.0)) throw Error(ErrorCode::InvalidArgument, "theta must be positive");
    if (!(eta > 0.0 && eta < 1.0))
        throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1)");
    if (q_min < 2) throw Error(ErrorCode::InvalidArgument, "q_min must be >= 2");
    if (E.measure() <= 0.0) throw Error(ErrorCode::InvalidArgument, "E must have positive measure");
    for (Frequency q = q_min; q <= q_max; ++q) {
        if (std::gcd(q, coprime_to) != 1) continue;
        const double radius = theta / (static_cast<double>(q) * static_cast<double>(q));
        const Frequency num_limit = star ? 2 * q : q;
        for (Frequency num = star ? 1 : 0; num < num_limit; num += star ? 2 : 1) {
            if (!admissible_numerator(num, q, star)) continue;
            const double denom = star ? 2.0 * static_cast<double>(q) : static_cast<double>(q);
            const double x = static_cast<double>(num) / denom;
            const double inside = E.intersection_length(x - radius, x + radius);
            const double density = inside / (2.0 * radius);
            if (density >= 1.0 - eta) {
                GridApproximation g{};
                g.numerator = num;
                g.q = q;
                g.star = star;
                g.value = x;
                g.error = 0.0;
                g.theta = theta;
                g.density = density;
                g.coprime_witness_num = std::gcd(num, star ? 2 * q : q);
                g.coprime_witness_q = std::gcd(q, coprime_to);
                return g;
            }
        }
    }
    throw Error(ErrorCode::NotFound, "no grid neighborhood dense enough in the given q window");
}

}  // namespace conc
