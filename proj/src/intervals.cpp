#include "conc/intervals.hpp"

#include <algorithm>
#include <cmath>

#include "conc/errors.hpp"

namespace conc {

namespace {

double wrap01(double x) {
    double y = x - std::floor(x);
    if (y >= 1.0) y -= 1.0;  // floor rounding at exact integers
    return y;
}

std::vector<IntervalUnion::Interval> normalize(
    const std::vector<std::pair<double, double>>& raw) {
    std::vector<IntervalUnion::Interval> parts;
    for (const auto& [l, r] : raw) {
        if (!(std::isfinite(l) && std::isfinite(r)))
            throw Error(ErrorCode::InvalidArgument, "non-finite interval endpoint");
        double len = r - l;
        if (len < IntervalUnion::kMinLength) continue;  // degenerate piece
        if (len >= 1.0) {
            parts.push_back({0.0, 1.0});
            continue;
        }
        double a = wrap01(l);
        double b = a + len;
        if (b <= 1.0) {
            parts.push_back({a, b});
        } else {  // crosses the seam
            parts.push_back({a, 1.0});
            parts.push_back({0.0, b - 1.0});
        }
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& x, const auto& y) { return x.left < y.left; });
    // merge overlapping/touching pieces
    std::vector<IntervalUnion::Interval> merged;
    for (const auto& iv : parts) {
        if (!merged.empty() && iv.left <= merged.back().right + IntervalUnion::kMinLength) {
            merged.back().right = std::max(merged.back().right, iv.right);
        } else {
            merged.push_back(iv);
        }
    }
    // drop anything that collapsed
    std::erase_if(merged, [](const auto& iv) { return iv.length() < IntervalUnion::kMinLength; });
    return merged;
}

}  // namespace

IntervalUnion IntervalUnion::make(const std::vector<std::pair<double, double>>& raw,
                                  bool symmetric) {
    IntervalUnion u;
    u.parts_ = normalize(raw);
    u.symmetric_ = symmetric;
    if (u.parts_.empty())
        throw Error(ErrorCode::InvalidArgument, "interval union has zero measure");
    if (symmetric && !u.is_symmetric())
        throw Error(ErrorCode::InvalidArgument,
                    "symmetric flag set but the set is not invariant under x -> -x");
    return u;
}

IntervalUnion IntervalUnion::full_circle() { return make({{0.0, 1.0}}, true); }

IntervalUnion IntervalUnion::symmetric_pair(double center, double halfwidth) {
    return make({{center - halfwidth, center + halfwidth},
                 {-center - halfwidth, -center + halfwidth}},
                true);
}

double IntervalUnion::measure() const {
    double m = 0.0;
    for (const auto& iv : parts_) m += iv.length();
    return std::min(m, 1.0);
}

bool IntervalUnion::contains(double x) const {
    double y = x - std::floor(x);
    if (y >= 1.0) y -= 1.0;
    for (const auto& iv : parts_)
        if (y >= iv.left && y <= iv.right) return true;
    return false;
}

double IntervalUnion::containment_halfwidth(double x) const {
    if (measure() >= 1.0 - kMinLength) return 0.5;  // full circle
    double y = x - std::floor(x);
    if (y >= 1.0) y -= 1.0;
    // unroll the periodic translates and re-merge, so pieces touching the
    // seam act as one interval
    std::vector<Interval> unrolled;
    for (const auto& iv : parts_)
        for (double shift : {-1.0, 0.0, 1.0})
            unrolled.push_back({iv.left + shift, iv.right + shift});
    std::sort(unrolled.begin(), unrolled.end(),
              [](const auto& a, const auto& b) { return a.left < b.left; });
    std::vector<Interval> merged;
    for (const auto& iv : unrolled) {
        if (!merged.empty() && iv.left <= merged.back().right + kMinLength)
            merged.back().right = std::max(merged.back().right, iv.right);
        else
            merged.push_back(iv);
    }
    double best = 0.0;
    for (const auto& iv : merged)
        if (y >= iv.left && y <= iv.right)
            best = std::max(best, std::min(y - iv.left, iv.right - y));
    return best;
}

double IntervalUnion::intersection_length(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    if (hi - lo >= 1.0) return measure();
    double a = lo - std::floor(lo);
    double b = a + (hi - lo);
    double total = 0.0;
    for (const auto& iv : parts_) {
        for (double shift : {0.0, 1.0}) {  // window [a,b] may extend past 1
            double l = iv.left + shift, r = iv.right + shift;
            double ov = std::min(b, r) - std::max(a, l);
            if (ov > 0.0) total += ov;
        }
    }
    return total;
}

bool IntervalUnion::is_symmetric(double tol) const {
    std::vector<std::pair<double, double>> reflected;
    reflected.reserve(parts_.size());
    for (const auto& iv : parts_) reflected.push_back({-iv.right, -iv.left});
    auto refl = normalize(reflected);
    if (refl.size() != parts_.size()) {
        // endpoint at 0/1 can split differently; compare by sampling measure
        // of the symmetric difference instead
        double sym_diff = 0.0;
        IntervalUnion r;
        r.parts_ = refl;
        for (const auto& iv : parts_)
            sym_diff += iv.length() - r.intersection_length(iv.left, iv.right);
        for (const auto& iv : refl)
            sym_diff += iv.length() - intersection_length(iv.left, iv.right);
        return sym_diff < tol;
    }
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (std::abs(parts_[i].left - refl[i].left) > tol ||
            std::abs(parts_[i].right - refl[i].right) > tol)
            return false;
    }
    return true;
}

}  // namespace conc
