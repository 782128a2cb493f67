#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ivts/classify.hpp"
#include "ivts/dgp.hpp"
#include "ivts/imaging.hpp"

namespace ivts {

enum class ClassifierMode { knn, linear };

/// Split -> (image -> featurize -> train | k-NN on series distance) -> evaluate.
struct ProtocolConfig {
    ClassifierMode mode = ClassifierMode::knn;
    Kernel2x2 kernel = kernel_preset(KernelPreset::K4);
    TrajectoryConfig trajectory;
    double train_fraction = 0.8;
    std::size_t k = 1;
    FeatureConfig features;
    TrainConfig training;
    unsigned threads = 1;

    void validate() const;
};

struct RunOutcome {
    double accuracy;
    std::vector<int> predictions;
    std::vector<int> labels;
    std::optional<LinearClassifier> model;
};

RunOutcome run_protocol(const LabeledDataset& ds, const ProtocolConfig& cfg, std::uint64_t split_seed);

/// Linear-mode evaluation over precomputed images; `train_mask[i]` selects
/// the training items.
RunOutcome run_linear_on_images(const std::vector<RecurrenceImage>& images,
                                const std::vector<int>& labels, int classes,
                                const std::vector<bool>& train_mask, const ProtocolConfig& cfg);

struct ReportRow {
    std::size_t run;
    std::string kernel;
    std::string dgp;
    std::uint64_t seed;
    double accuracy;
};

/// CSV `run,kernel,dgp,seed,accuracy`.
void write_report(const std::vector<ReportRow>& rows, const std::filesystem::path& path);

double median(std::vector<double> values);

} // namespace ivts
