#include "ivts/experiment.hpp"

#include <algorithm>
#include <fstream>

#include "ivts/errors.hpp"
#include "ivts/parallel.hpp"
#include "ivts/text.hpp"

namespace ivts {

void ProtocolConfig::validate() const {
    trajectory.validate();
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw InvalidArgument("train fraction must lie strictly between 0 and 1");
    }
    if (k < 1) throw InvalidArgument("k must be >= 1");
    if (!(features.normalize_cap > 0.0)) throw InvalidArgument("normalize cap must be positive");
    if (features.mode == FeatureConfig::Mode::block_mean && features.q < 1) {
        throw InvalidArgument("block grid q must be >= 1");
    }
    if (!(training.eta0 > 0.0)) throw InvalidArgument("eta0 must be positive");
    if (!(training.c_A > 0.0) || !(training.c_B > 0.0)) throw InvalidArgument("caps must be positive");
}

RunOutcome run_linear_on_images(const std::vector<RecurrenceImage>& images,
                                const std::vector<int>& labels, int classes,
                                const std::vector<bool>& train_mask, const ProtocolConfig& cfg) {
    std::vector<Vector> features(images.size());
    parallel_for(images.size(), cfg.threads,
                 [&](std::size_t i) { features[i] = featurize(images[i], cfg.features); });

    FeatureSet train_set, test_set;
    train_set.classes = test_set.classes = classes;
    for (std::size_t i = 0; i < images.size(); ++i) {
        FeatureSet& dst = train_mask[i] ? train_set : test_set;
        dst.features.push_back(std::move(features[i]));
        dst.labels.push_back(labels[i]);
    }
    if (test_set.size() == 0) throw EmptyInput("test split is empty");

    TrainConfig tc = cfg.training;
    tc.threads = cfg.threads;
    TrainResult fit = train(train_set, tc);

    RunOutcome out{0.0, {}, test_set.labels, fit.model};
    out.predictions.reserve(test_set.size());
    for (const auto& z : test_set.features) out.predictions.push_back(predict(fit.model, z));
    out.accuracy = accuracy(out.predictions, out.labels);
    return out;
}

RunOutcome run_protocol(const LabeledDataset& ds, const ProtocolConfig& cfg, std::uint64_t split_seed) {
    cfg.validate();
    ds.validate();
    if (cfg.mode == ClassifierMode::knn) {
        const auto [train_set, test_set] = train_test_split(ds, cfg.train_fraction, split_seed);
        RunOutcome out{0.0, knn_predict_all(train_set, test_set, cfg.k, cfg.kernel, cfg.threads), {}, {}};
        for (const auto& it : test_set.items) out.labels.push_back(it.label);
        out.accuracy = accuracy(out.predictions, out.labels);
        return out;
    }

    std::vector<MvIntervalSeries> series;
    std::vector<int> labels;
    for (const auto& it : ds.items) {
        series.push_back(it.series);
        labels.push_back(it.label);
    }
    const auto images = image_batch(series, cfg.trajectory, cfg.kernel, cfg.threads);
    const auto mask = stratified_train_mask(labels, ds.classes, cfg.train_fraction, split_seed);
    return run_linear_on_images(images, labels, ds.classes, mask, cfg);
}

void write_report(const std::vector<ReportRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "run,kernel,dgp,seed,accuracy\n";
    for (const auto& r : rows) {
        out << r.run << ',' << r.kernel << ',' << r.dgp << ',' << r.seed << ','
            << format_double(r.accuracy) << '\n';
    }
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

double median(std::vector<double> values) {
    if (values.empty()) throw EmptyInput("median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

} // namespace ivts
