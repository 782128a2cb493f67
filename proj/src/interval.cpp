#include "ivts/interval.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "ivts/errors.hpp"
#include "ivts/text.hpp"

namespace ivts {

Interval::Interval(double lower, double upper) : lower_(lower), upper_(upper) {
    if (!std::isfinite(lower) || !std::isfinite(upper)) {
        throw NonFinite("interval bounds must be finite");
    }
}

CenterRange decompose(const Interval& a) { return {a.center(), a.range()}; }

Interval compose(double center, double range) {
    if (!std::isfinite(center) || !std::isfinite(range)) {
        throw NonFinite("center and range must be finite");
    }
    return Interval(center - range, center + range);
}

bool Kernel2x2::check_condition() const noexcept {
    return k_pp > 0.0 && k_pp * k_mm > k_pm * k_pm;
}

Kernel2x2 kernel_preset(KernelPreset id) {
    switch (id) {
    case KernelPreset::K1: return {0.25, -0.25, 0.25};
    case KernelPreset::K2: return {1.0, 1.0, 1.0};
    case KernelPreset::K3: return {0.5, 0.25, 0.5};
    case KernelPreset::K4: return {1.0, 0.0, 1.0};
    case KernelPreset::K5: return {2.0, 1.0, 1.0};
    }
    throw InvalidArgument("unknown kernel preset");
}

Kernel2x2 parse_kernel(std::string_view text) {
    const auto trimmed = trim(text);
    if (trimmed.size() == 2 && (trimmed[0] == 'K' || trimmed[0] == 'k') &&
        trimmed[1] >= '1' && trimmed[1] <= '5') {
        return kernel_preset(static_cast<KernelPreset>(trimmed[1] - '0'));
    }
    const auto parts = split(trimmed, ',');
    if (parts.size() != 3) {
        throw InvalidArgument("kernel must be K1..K5 or 'k_pp,k_pm,k_mm', got '" +
                              std::string(text) + "'");
    }
    Kernel2x2 k{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
    if (!std::isfinite(k.k_pp) || !std::isfinite(k.k_pm) || !std::isfinite(k.k_mm)) {
        throw InvalidArgument("kernel entries must be finite");
    }
    return k;
}

std::string kernel_label(const Kernel2x2& k) {
    for (int i = 1; i <= 5; ++i) {
        if (kernel_preset(static_cast<KernelPreset>(i)) == k) {
            return "K" + std::to_string(i);
        }
    }
    return format_double(k.k_pp) + ";" + format_double(k.k_pm) + ";" + format_double(k.k_mm);
}

double dk_squared(const Interval& a, const Interval& b, const Kernel2x2& k) noexcept {
    const double du = a.upper() - b.upper();
    const double dl = a.lower() - b.lower();
    return k.k_pp * du * du + k.k_mm * dl * dl - 2.0 * k.k_pm * dl * du;
}

double checked_sqrt(double squared) {
    if (squared < -kNegativeTolerance) {
        std::ostringstream msg;
        msg << "negative squared distance " << squared << " (indefinite kernel)";
        throw NegativeSquaredDistance(msg.str());
    }
    return squared > 0.0 ? std::sqrt(squared) : 0.0;
}

double dk_distance(const Interval& a, const Interval& b, const Kernel2x2& k) {
    return checked_sqrt(dk_squared(a, b, k));
}

IntervalSeries::IntervalSeries(std::vector<Interval> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw InvalidArgument("interval series must have T >= 1");
    }
}

double series_dk_squared(const IntervalSeries& x1, const IntervalSeries& x2,
                         const Kernel2x2& k) {
    if (x1.length() != x2.length()) {
        throw LengthMismatch("series lengths differ: " + std::to_string(x1.length()) +
                             " vs " + std::to_string(x2.length()));
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < x1.length(); ++t) {
        sum += dk_squared(x1[t], x2[t], k);
    }
    return sum;
}

MvIntervalSeries::MvIntervalSeries(std::vector<IntervalSeries> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) {
        throw InvalidArgument("multivariate series needs d >= 1");
    }
    for (const auto& r : rows_) {
        if (r.length() != rows_.front().length()) {
            throw LengthMismatch("all dimensions must share the same length T");
        }
    }
}

MvIntervalSeries::MvIntervalSeries(IntervalSeries single) {
    rows_.push_back(std::move(single));
}

double mv_series_dk_squared(const MvIntervalSeries& x1, const MvIntervalSeries& x2,
                            const Kernel2x2& k) {
    if (x1.dims() != x2.dims()) {
        throw DimensionMismatch("dimension counts differ: " + std::to_string(x1.dims()) +
                                " vs " + std::to_string(x2.dims()));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < x1.dims(); ++j) {
        sum += series_dk_squared(x1.dim(j), x2.dim(j), k);
    }
    return sum;
}

} // namespace ivts
