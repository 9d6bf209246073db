#pragma once

#include <utility>
#include <vector>

namespace conc {

// A finite union of open subintervals of the circle T = R/Z, stored in a
// normalized form: sorted, pairwise disjoint intervals inside [0, 1].
// Intervals of length below `kMinLength` are treated as empty.
class IntervalUnion {
public:
    struct Interval {
        double left;
        double right;  // left < right, both in [0, 1]
        double length() const { return right - left; }
    };

    static constexpr double kMinLength = 1e-12;

    // Builds a union from raw (left, right) pairs. Endpoints may lie outside
    // [0, 1); they are wrapped mod 1 and split at the seam. Overlapping pieces
    // are merged. Throws InvalidArgument if the result has zero measure or if
    // `symmetric` is requested but the set is not invariant under x -> -x.
    static IntervalUnion make(const std::vector<std::pair<double, double>>& raw, bool symmetric);

    // The full circle.
    static IntervalUnion full_circle();

    // Symmetrized pair (a - w, a + w) U (-a - w, -a + w).
    static IntervalUnion symmetric_pair(double center, double halfwidth);

    const std::vector<Interval>& intervals() const { return parts_; }
    bool symmetric_flag() const { return symmetric_; }

    double measure() const;
    bool contains(double x) const;

    // Largest w >= 0 with [x - w, x + w] (mod 1) fully inside the closure of
    // the union; 0 if x is outside.
    double containment_halfwidth(double x) const;

    // Exact length of the intersection with [lo, hi] (interpreted mod 1,
    // hi - lo <= 1).
    double intersection_length(double lo, double hi) const;

    // True if the set is invariant under x -> -x up to endpoint tolerance.
    bool is_symmetric(double tol = 1e-9) const;

private:
    std::vector<Interval> parts_;
    bool symmetric_ = false;
};

}  // namespace conc
