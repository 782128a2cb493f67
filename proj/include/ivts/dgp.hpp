#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "ivts/interval.hpp"
#include "ivts/rng.hpp"

namespace ivts {

/// (center, range) pair; also used for residuals.
struct Vec2 {
    double c = 0.0;
    double r = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Mat2 {
    double a11, a12, a21, a22;

    constexpr Vec2 operator*(const Vec2& v) const noexcept {
        return {a11 * v.c + a12 * v.r, a21 * v.c + a22 * v.r};
    }
};

inline constexpr Mat2 kPhi{0.2, -0.1, 0.1, 0.2};
inline constexpr Mat2 kGamma{-0.6, 0.3, 0.3, 0.6};

/// Default correlations, one class each in the univariate datasets.
inline const std::vector<double> kDefaultRhoGrid{-0.9, -0.5, 0.0, 0.3, 0.7};

struct DgpConfig {
    double rho = 0.0;
    std::size_t T = 150;
    std::size_t truncation_L = 100;
    std::size_t burn_in = 100;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Draw from N(0, [[1, rho/2], [rho/2, 1/4]]) via its Cholesky factor.
Vec2 sample_residual(double rho, Rng& rng);

/// pi_l = l^-2 / sqrt(3).
double dgp1_weight(std::size_t l);

/// Truncated series sum_{l<=L} pi_l Phi Z_{t,l} + eps_t, Z_{t,1} = (1,1).
std::vector<Vec2> gen_dgp1(const DgpConfig& cfg, Rng& rng);
/// VARMA(1,1) X_t = Phi X_{t-1} + eps_t - Gamma eps_{t-1}, X_0 = eps_0 = 0,
/// first burn_in steps dropped.
std::vector<Vec2> gen_dgp2(const DgpConfig& cfg, Rng& rng);
/// MA(1) X_t = eps_t - Gamma eps_{t-1}, eps_0 = 0.
std::vector<Vec2> gen_dgp3(const DgpConfig& cfg, Rng& rng);

/// Deterministic recursions over a given residual stream (eps_1, eps_2, ...).
/// The VARMA variant returns residuals.size() - burn_in points.
std::vector<Vec2> varma_from_residuals(std::span<const Vec2> residuals, std::size_t burn_in,
                                       const Mat2& phi = kPhi, const Mat2& gamma = kGamma);
std::vector<Vec2> ma_from_residuals(std::span<const Vec2> residuals, const Mat2& gamma = kGamma);

/// Element t becomes [c - r, c + r].
IntervalSeries to_interval_series(std::span<const Vec2> cr);

struct LabeledItem {
    MvIntervalSeries series;
    int label = 1; ///< in 1..C

    friend bool operator==(const LabeledItem&, const LabeledItem&) = default;
};

struct LabeledDataset {
    std::vector<LabeledItem> items;
    int classes = 0;

    void validate() const;
    std::size_t dims() const { return items.empty() ? 0 : items.front().series.dims(); }
    std::size_t length() const { return items.empty() ? 0 : items.front().series.length(); }

    friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

/// Generates one interval series from DGP 1, 2 or 3.
IntervalSeries generate_series(int dgp_id, const DgpConfig& cfg);

struct DatasetOptions {
    std::size_t truncation_L = 100;
    std::size_t burn_in = 100;
    unsigned threads = 1;
};

/// One DGP, one class per rho.
LabeledDataset build_univariate_dataset(int dgp_id, std::size_t per_class_n, std::size_t T,
                                        std::span<const double> rho_grid, std::uint64_t seed,
                                        const DatasetOptions& opts = {});
/// Classes = DGP 1..3, dimensions = rho grid (d = 5 by default).
LabeledDataset build_multivariate_c1(std::size_t per_class_n, std::size_t T, std::uint64_t seed,
                                     std::span<const double> rho_grid = kDefaultRhoGrid,
                                     const DatasetOptions& opts = {});
/// Classes = rho grid, dimensions = DGP 1..3.
LabeledDataset build_multivariate_c2(std::size_t per_class_n, std::size_t T, std::uint64_t seed,
                                     std::span<const double> rho_grid = kDefaultRhoGrid,
                                     const DatasetOptions& opts = {});
/// Univariate, classes = DGP 1..3 at a single rho.
LabeledDataset build_dgp_classes(double rho, std::size_t per_class_n, std::size_t T,
                                 std::uint64_t seed, const DatasetOptions& opts = {});

/// Per-item train membership: each class is shuffled under `seed` and its
/// first round(fraction * n_c) items (clamped to 1..n_c-1) go to training.
std::vector<bool> stratified_train_mask(std::span<const int> labels, int classes,
                                        double train_fraction, std::uint64_t seed);

/// Stratified random split; within each part items keep dataset order.
std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& ds,
                                                           double train_fraction,
                                                           std::uint64_t seed);

/// CSV with header `item,dim,t,lower,upper,label`, one row per (item, dim, t).
void write_dataset_csv(const LabeledDataset& ds, const std::filesystem::path& path);
LabeledDataset read_dataset_csv(const std::filesystem::path& path);

} // namespace ivts
