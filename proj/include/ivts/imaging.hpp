#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <span>
#include <vector>

#include "ivts/interval.hpp"

namespace ivts {

/// Delay-embedding parameters plus recurrence threshold(s).
///
/// `epsilon` holds one value (broadcast to every dimension) or one value per
/// dimension for joint plots.
struct TrajectoryConfig {
    std::size_t m = 1;
    std::size_t kappa = 1;
    std::vector<double> epsilon{std::numbers::pi / 18.0};

    void validate() const;
    /// Threshold for dimension j; throws DimensionMismatch when the vector
    /// is neither scalar nor of length d.
    double epsilon_for(std::size_t j, std::size_t d) const;
    /// Number of trajectories for a series of length T, 0 if too short.
    std::size_t trajectory_count(std::size_t T) const noexcept;
};

/// Square binary matrix, row-major bytes holding 0 or 1.
class RecurrenceImage {
public:
    RecurrenceImage() = default;
    explicit RecurrenceImage(std::size_t n, std::uint8_t fill = 0);

    std::size_t size() const noexcept { return n_; }
    std::uint8_t operator()(std::size_t j, std::size_t k) const { return pixels_[j * n_ + k]; }
    void set(std::size_t j, std::size_t k, bool on) { pixels_[j * n_ + k] = on ? 1 : 0; }
    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

    friend bool operator==(const RecurrenceImage&, const RecurrenceImage&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> pixels_;
};

using Trajectory = std::vector<Interval>;

/// Trajectory j is (X_j, X_{j+kappa}, ..., X_{j+(m-1)kappa}).
std::vector<Trajectory> extract_trajectories(const IntervalSeries& x, const TrajectoryConfig& cfg);

/// sqrt of the summed per-slot squared distances.
double trajectory_dk(std::span<const Interval> ta, std::span<const Interval> tb, const Kernel2x2& k);

/// H(0) == 1, so "distance <= epsilon" recurs.
constexpr int heaviside(double x) noexcept { return x >= 0.0 ? 1 : 0; }

/// Interval recurrence plot of a univariate series with scalar threshold.
RecurrenceImage irp(const IntervalSeries& x, const TrajectoryConfig& cfg, const Kernel2x2& k);

/// Joint plot: Hadamard product of per-dimension plots, each using its own
/// threshold from cfg.
RecurrenceImage ijrp(const MvIntervalSeries& w, const TrajectoryConfig& cfg, const Kernel2x2& k);

/// irp when d == 1, ijrp otherwise.
RecurrenceImage recurrence_image(const MvIntervalSeries& w, const TrajectoryConfig& cfg,
                                 const Kernel2x2& k);

/// Images one series per slot, concurrently; output order matches input.
std::vector<RecurrenceImage> image_batch(std::span<const MvIntervalSeries> items,
                                         const TrajectoryConfig& cfg, const Kernel2x2& k,
                                         unsigned threads);

/// Binary "P5" grey map, maxval 255, pixel = 255 * entry.
void export_pgm(const RecurrenceImage& img, const std::filesystem::path& path);
/// N rows of comma-separated 0/1.
void export_csv(const RecurrenceImage& img, const std::filesystem::path& path);

RecurrenceImage read_pgm(const std::filesystem::path& path);
RecurrenceImage read_csv_image(const std::filesystem::path& path);

} // namespace ivts
