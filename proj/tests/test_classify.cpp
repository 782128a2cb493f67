#include <doctest.h>

#include <cmath>
#include <fstream>

#include "ivts/classify.hpp"
#include "ivts/errors.hpp"
#include "support.hpp"

using namespace ivts;
using ivts::testing::Gen;
using ivts::testing::TempDir;

namespace {

RecurrenceImage checkerboard(std::size_t n) {
    RecurrenceImage img(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) img.set(j, i, (i + j) % 2 == 0);
    }
    return img;
}

FeatureSet separable(std::size_t per_class, std::uint64_t seed) {
    Gen g(seed);
    FeatureSet fs;
    fs.classes = 2;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const int y = i < per_class ? 1 : 2;
        const double s = y == 1 ? 1.0 : -1.0;
        fs.features.push_back({s * g.uniform(0.6, 0.7), g.uniform(-0.3, 0.3)});
        fs.labels.push_back(y);
    }
    return fs;
}

LabeledItem item(std::vector<Interval> v, int label) {
    return {MvIntervalSeries(IntervalSeries(std::move(v))), label};
}

} // namespace

TEST_CASE("block mean pooling") {
    FeatureConfig cfg;
    cfg.q = 2;
    const auto z = featurize(checkerboard(4), cfg);
    REQUIRE(z.size() == 4);
    // unscaled mean is 1/2 per cell; the scale is cap / sqrt(4)
    for (double v : z) CHECK(v == doctest::Approx(0.25));

    cfg.mode = FeatureConfig::Mode::flatten;
    const auto flat = featurize(checkerboard(3), cfg);
    CHECK(flat.size() == 9);
    CHECK(flat[0] == doctest::Approx(1.0 / 3.0));
    CHECK(flat[1] == 0.0);

    cfg.mode = FeatureConfig::Mode::block_mean;
    cfg.q = 5;
    CHECK_THROWS_AS(featurize(checkerboard(4), cfg), BlockGridInvalid);
    cfg.q = 0;
    CHECK_THROWS_AS(featurize(checkerboard(4), cfg), BlockGridInvalid);

    // uneven grid: cells of sizes 2 and 3 over a 5x5 all-ones image
    cfg.q = 2;
    const auto ones = featurize(RecurrenceImage(5, 1), cfg);
    for (double v : ones) CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("property: features stay inside the cap") {
    Gen g(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = g.index(1, 30);
        RecurrenceImage img(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) img.set(j, i, g.uniform(0, 1) < 0.5);
        }
        FeatureConfig cfg;
        cfg.q = g.index(1, n);
        cfg.normalize_cap = g.uniform(0.1, 3);
        double sq = 0;
        for (double v : featurize(img, cfg)) sq += v * v;
        CHECK(std::sqrt(sq) <= cfg.normalize_cap + 1e-12);
    }
}

TEST_CASE("losses") {
    CHECK(parse_loss("hinge") == LossKind::hinge);
    CHECK(parse_loss("squared_hinge") == LossKind::squared_hinge);
    CHECK(parse_loss("exponential") == LossKind::exponential);
    CHECK_THROWS_AS(parse_loss("logistic"), InvalidArgument);

    CHECK(aux_loss(LossKind::hinge, -1) == 2.0);
    CHECK(aux_loss(LossKind::hinge, 2) == 0.0);
    CHECK(aux_loss(LossKind::squared_hinge, 0) == 1.0);
    CHECK(aux_loss(LossKind::squared_hinge, 3) == 0.0);
    CHECK(aux_loss(LossKind::exponential, 0) == 1.0);
    CHECK(aux_subgradient(LossKind::hinge, 0.5) == -1.0);
    CHECK(aux_subgradient(LossKind::hinge, 1.0) == 0.0);
    CHECK(aux_subgradient(LossKind::squared_hinge, 0) == -2.0);
    CHECK(aux_subgradient(LossKind::exponential, 0) == -1.0);

    // non-increasing
    Gen g(32);
    for (int trial = 0; trial < 500; ++trial) {
        const double a = g.uniform(-4, 4), b = a + g.uniform(0, 2);
        for (auto k : {LossKind::hinge, LossKind::squared_hinge, LossKind::exponential}) {
            CHECK(aux_loss(k, b) <= aux_loss(k, a));
        }
    }
}

TEST_CASE("scores, margin and prediction") {
    LinearClassifier clf(3, 2, 10, 10);
    clf.row(0)[0] = 1;
    clf.row(1)[1] = 1;
    clf.bias(2) = 0.5;
    const std::vector<double> z{2, 1};
    const auto s = score(clf, z);
    CHECK(s == std::vector<double>{2, 1, 0.5});
    CHECK(predict(clf, z) == 1);
    CHECK(margin(clf, z, 1) == doctest::Approx(1.0));
    CHECK(margin(clf, z, 3) == doctest::Approx(-1.5));
    CHECK(max_loss(clf, z, 1, LossKind::hinge) == doctest::Approx(0.0));
    CHECK(max_loss(clf, z, 2, LossKind::hinge) == doctest::Approx(2.0));

    // ties go to the lowest class
    const LinearClassifier zero(4, 2, 1, 1);
    CHECK(predict(zero, z) == 1);
    CHECK_THROWS_AS(score(clf, std::vector<double>{1}), DimensionMismatch);
    CHECK_THROWS_AS(margin(clf, z, 4), InvalidArgument);
}

TEST_CASE("projection onto caps") {
    LinearClassifier clf(2, 2, 1, 0.5);
    clf.row(0)[0] = 3;
    clf.row(0)[1] = 4;
    clf.bias(1) = -2;
    CHECK_FALSE(clf.within_caps());
    clf.project();
    CHECK(clf.within_caps());
    CHECK(clf.row(0)[0] == doctest::Approx(0.6));
    CHECK(clf.row(0)[1] == doctest::Approx(0.8));
    CHECK(clf.bias(1) == -0.5);
}

TEST_CASE("training on separable data") {
    const auto fs = separable(40, 33);
    TrainConfig cfg;
    cfg.steps = 2000;
    const auto fit = train(fs, cfg);
    CHECK(fit.best_risk < 0.05);
    CHECK(fit.model.within_caps(1e-9));
    CHECK(empirical_phi_risk(fit.model, fs, LossKind::hinge) == doctest::Approx(fit.best_risk));
    CHECK(fit.best_history.size() == 2001);
    CHECK(fit.best_history.front() == doctest::Approx(1.0));
    for (std::size_t t = 1; t < fit.best_history.size(); ++t) {
        CHECK(fit.best_history[t] <= fit.best_history[t - 1]);
    }

    cfg.threads = 4;
    const auto again = train(fs, cfg);
    CHECK(again.model == fit.model);

    FeatureSet one = fs;
    one.classes = 1;
    for (auto& y : one.labels) y = 1;
    CHECK_THROWS_AS(train(one, cfg), InvalidArgument);
}

TEST_CASE("other losses also train") {
    const auto fs = separable(30, 34);
    for (auto k : {LossKind::squared_hinge, LossKind::exponential}) {
        TrainConfig cfg;
        cfg.kind = k;
        cfg.steps = 300;
        const auto fit = train(fs, cfg);
        CHECK(fit.best_risk < fit.best_history.front());
        CHECK(fit.model.within_caps());
    }
}

TEST_CASE("nearest neighbours") {
    LabeledDataset tr;
    tr.classes = 2;
    tr.items.push_back(item({Interval{0, 1}, Interval{0, 1}}, 1));
    tr.items.push_back(item({Interval{5, 6}, Interval{5, 6}}, 2));
    tr.items.push_back(item({Interval{0, 2}, Interval{0, 1}}, 1));
    const Kernel2x2 k4 = kernel_preset(KernelPreset::K4);
    const MvIntervalSeries near_two(IntervalSeries({Interval{4, 6}, Interval{5, 6}}));
    CHECK(knn_classify(tr, near_two, 1, k4) == 2);
    CHECK(knn_classify(tr, near_two, 3, k4) == 1);
    CHECK_THROWS_AS(knn_classify(tr, near_two, 4, k4), InvalidArgument);

    // 1-1 vote tie, class 2 is closer overall
    LabeledDataset tie;
    tie.classes = 2;
    tie.items.push_back(item({Interval{0, 0}}, 1));
    tie.items.push_back(item({Interval{3, 3}}, 2));
    const MvIntervalSeries q(IntervalSeries({Interval{2, 2}}));
    CHECK(knn_classify(tie, q, 2, k4) == 2);
    const MvIntervalSeries mid(IntervalSeries({Interval{1.5, 1.5}}));
    CHECK(knn_classify(tie, mid, 2, k4) == 1);

    LabeledDataset queries;
    queries.classes = 2;
    queries.items.push_back({near_two, 2});
    queries.items.push_back({MvIntervalSeries(IntervalSeries({Interval{0, 1}, Interval{0, 1}})), 1});
    const auto pred = knn_predict_all(tr, queries, 1, k4, 2);
    CHECK(pred == std::vector<int>{2, 1});
}

TEST_CASE("accuracy") {
    const std::vector<int> p{1, 2, 3, 1}, y{1, 2, 1, 1};
    CHECK(accuracy(p, y) == 0.75);
    CHECK_THROWS_AS(accuracy(p, std::vector<int>{1}), LengthMismatch);
    CHECK_THROWS_AS(accuracy(std::vector<int>{}, std::vector<int>{}), EmptyInput);
}

TEST_CASE("model file round trip") {
    TempDir dir("ivts_model");
    const auto fit = train(separable(10, 35), TrainConfig{});
    save_model(fit.model, LossKind::squared_hinge, dir / "m.txt");
    LossKind kind = LossKind::hinge;
    CHECK(load_model(dir / "m.txt", &kind) == fit.model);
    CHECK(kind == LossKind::squared_hinge);
    {
        std::ofstream bad(dir / "bad.txt");
        bad << "2 3 1 1 hinge\n0 0\n";
    }
    CHECK_THROWS_AS(load_model(dir / "bad.txt"), DataError);
}
