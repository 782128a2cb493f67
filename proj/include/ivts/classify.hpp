#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivts/dgp.hpp"
#include "ivts/imaging.hpp"
#include "ivts/interval.hpp"

namespace ivts {

using Vector = std::vector<double>;

/// Deterministic pooling of a recurrence image into a feature vector.
///
/// flatten gives p = N^2, block_mean(q) gives p = q^2 cell averages over a
/// q x q grid with cell edges at floor(i N / q). The pooled vector has entries
/// in [0, 1], so its norm is at most sqrt(p); it is scaled by
/// normalize_cap / sqrt(p), which keeps every feature inside the c_Z ball
/// while preserving relative magnitudes across images.
struct FeatureConfig {
    enum class Mode { flatten, block_mean };

    Mode mode = Mode::block_mean;
    std::size_t q = 5;
    double normalize_cap = 1.0;

    void validate(std::size_t image_size) const;
    std::size_t dimension(std::size_t image_size) const;
};

Vector featurize(const RecurrenceImage& img, const FeatureConfig& cfg);

enum class LossKind { hinge, squared_hinge, exponential };

LossKind parse_loss(std::string_view name);
std::string_view loss_name(LossKind kind) noexcept;

double aux_loss(LossKind kind, double a) noexcept;
/// Derivative where it exists; 0 for hinge at the kink a == 1.
double aux_subgradient(LossKind kind, double a) noexcept;

/// Per-class affine scores A_Y^T z + B_Y with row norms <= c_A and |B_Y| <= c_B.
/// Classes are reported 1..C; row index Y - 1 holds class Y.
class LinearClassifier {
public:
    LinearClassifier(std::size_t classes, std::size_t dim, double c_A, double c_B);

    std::size_t classes() const noexcept { return biases_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    double c_A() const noexcept { return c_A_; }
    double c_B() const noexcept { return c_B_; }

    std::span<const double> row(std::size_t y) const { return {weights_.data() + y * dim_, dim_}; }
    std::span<double> row(std::size_t y) { return {weights_.data() + y * dim_, dim_}; }
    double bias(std::size_t y) const { return biases_[y]; }
    double& bias(std::size_t y) { return biases_[y]; }

    /// Rescales rows onto the c_A ball and clips biases to [-c_B, c_B].
    void project();
    bool within_caps(double slack = 1e-9) const;

    friend bool operator==(const LinearClassifier&, const LinearClassifier&) = default;

private:
    std::size_t dim_;
    double c_A_;
    double c_B_;
    std::vector<double> weights_;
    std::vector<double> biases_;
};

Vector score(const LinearClassifier& clf, std::span<const double> z);
/// argmax of score, lowest class on ties; returns a class id in 1..C.
int predict(const LinearClassifier& clf, std::span<const double> z);

/// score[y] - max_{y' != y} score[y'] for class id y in 1..C.
double margin(const LinearClassifier& clf, std::span<const double> z, int y);
/// L(margin).
double max_loss(const LinearClassifier& clf, std::span<const double> z, int y, LossKind kind);

struct FeatureSet {
    std::vector<Vector> features;
    std::vector<int> labels;
    int classes = 0;

    std::size_t size() const noexcept { return features.size(); }
    void validate() const;
};

double empirical_phi_risk(const LinearClassifier& clf, const FeatureSet& data, LossKind kind);

struct TrainConfig {
    LossKind kind = LossKind::hinge;
    std::size_t steps = 500;
    double eta0 = 0.5; ///< step t uses eta0 / sqrt(t)
    double c_A = 1.0;
    double c_B = 1.0;
    unsigned threads = 1;
};

struct TrainResult {
    LinearClassifier model;
    double best_risk;
    /// best-so-far empirical risk after 0, 1, ..., steps updates
    std::vector<double> best_history;
};

/// Full-batch projected subgradient descent from zero weights; returns the
/// iterate with the lowest empirical risk seen.
TrainResult train(const FeatureSet& data, const TrainConfig& cfg);

/// k-NN vote over summed per-dimension series distances. Ties in the vote go
/// to the class with the smaller total neighbor distance, then the lower id.
int knn_classify(const LabeledDataset& train, const MvIntervalSeries& query, std::size_t k,
                 const Kernel2x2& kernel);

std::vector<int> knn_predict_all(const LabeledDataset& train, const LabeledDataset& queries,
                                 std::size_t k, const Kernel2x2& kernel, unsigned threads);

double accuracy(std::span<const int> predictions, std::span<const int> labels);

/// Text format: "C p c_A c_B kind" header, then C lines of p weights and the bias.
void save_model(const LinearClassifier& clf, LossKind kind, const std::filesystem::path& path);
LinearClassifier load_model(const std::filesystem::path& path, LossKind* kind = nullptr);

} // namespace ivts
