#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ivts {

/// One interval-valued observation [lower, upper].
///
/// Improper intervals (lower > upper) are allowed: simulated ranges are drawn
/// from a Gaussian and can be negative. Both bounds must be finite.
class Interval {
public:
    Interval() = default;
    Interval(double lower, double upper);

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double center() const noexcept { return (lower_ + upper_) / 2.0; }
    double range() const noexcept { return (upper_ - lower_) / 2.0; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lower_ = 0.0;
    double upper_ = 0.0;
};

struct CenterRange {
    double center;
    double range;
};

CenterRange decompose(const Interval& a);
/// [center - range, center + range]
Interval compose(double center, double range);

/// Symmetric kernel on the 0-sphere {-1, +1}. Only K(1,-1) is stored for the
/// off-diagonal, so symmetry holds by construction.
struct Kernel2x2 {
    double k_pp = 0.0; ///< K(1, 1)
    double k_pm = 0.0; ///< K(1, -1) == K(-1, 1)
    double k_mm = 0.0; ///< K(-1, -1)

    /// K(1,1) > 0 and K(1,1) K(-1,-1) > K(1,-1)^2.
    bool check_condition() const noexcept;

    friend bool operator==(const Kernel2x2&, const Kernel2x2&) = default;
};

enum class KernelPreset { K1 = 1, K2, K3, K4, K5 };

Kernel2x2 kernel_preset(KernelPreset id);

/// Parses "K1".."K5" or a "k_pp,k_pm,k_mm" triple.
Kernel2x2 parse_kernel(std::string_view text);

/// Canonical label: the preset name when the values match one, else the triple.
std::string kernel_label(const Kernel2x2& k);

/// Absolute slack below zero tolerated before a squared distance is rejected.
inline constexpr double kNegativeTolerance = 1e-12;

/// Quadratic form k_pp du^2 + k_mm dl^2 - 2 k_pm dl du. Negative values are
/// possible for indefinite kernels.
double dk_squared(const Interval& a, const Interval& b, const Kernel2x2& k) noexcept;

/// sqrt(max(dk_squared, 0)); throws NegativeSquaredDistance below -tolerance.
double dk_distance(const Interval& a, const Interval& b, const Kernel2x2& k);

/// Takes a squared distance to a distance with the same tolerance rule.
double checked_sqrt(double squared);

class IntervalSeries {
public:
    IntervalSeries() = default;
    explicit IntervalSeries(std::vector<Interval> values);

    std::size_t length() const noexcept { return values_.size(); }
    const Interval& operator[](std::size_t t) const { return values_[t]; }
    std::span<const Interval> values() const noexcept { return values_; }

    friend bool operator==(const IntervalSeries&, const IntervalSeries&) = default;

private:
    std::vector<Interval> values_;
};

/// Sum over time of per-step squared distances.
double series_dk_squared(const IntervalSeries& x1, const IntervalSeries& x2,
                         const Kernel2x2& k);

/// d x T grid; row j is the series of dimension j.
class MvIntervalSeries {
public:
    MvIntervalSeries() = default;
    explicit MvIntervalSeries(std::vector<IntervalSeries> rows);
    explicit MvIntervalSeries(IntervalSeries single);

    std::size_t dims() const noexcept { return rows_.size(); }
    std::size_t length() const noexcept { return rows_.empty() ? 0 : rows_.front().length(); }
    const IntervalSeries& dim(std::size_t j) const { return rows_[j]; }
    std::span<const IntervalSeries> rows() const noexcept { return rows_; }

    friend bool operator==(const MvIntervalSeries&, const MvIntervalSeries&) = default;

private:
    std::vector<IntervalSeries> rows_;
};

/// Sum over dimensions of series_dk_squared.
double mv_series_dk_squared(const MvIntervalSeries& x1, const MvIntervalSeries& x2,
                            const Kernel2x2& k);

} // namespace ivts
