#include "ivts/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "ivts/errors.hpp"
#include "ivts/parallel.hpp"
#include "ivts/text.hpp"

namespace ivts {

void FeatureConfig::validate(std::size_t image_size) const {
    if (!(normalize_cap > 0.0) || !std::isfinite(normalize_cap)) {
        throw InvalidArgument("normalize cap must be a positive finite number");
    }
    if (image_size == 0) throw BlockGridInvalid("cannot featurize an empty image");
    if (mode == Mode::block_mean && (q < 1 || q > image_size)) {
        throw BlockGridInvalid("block grid q=" + std::to_string(q) + " invalid for image of size " +
                               std::to_string(image_size));
    }
}

std::size_t FeatureConfig::dimension(std::size_t image_size) const {
    return mode == Mode::flatten ? image_size * image_size : q * q;
}

Vector featurize(const RecurrenceImage& img, const FeatureConfig& cfg) {
    const std::size_t n = img.size();
    cfg.validate(n);
    Vector z;
    if (cfg.mode == FeatureConfig::Mode::flatten) {
        z.assign(img.pixels().begin(), img.pixels().end());
    } else {
        z.assign(cfg.q * cfg.q, 0.0);
        for (std::size_t a = 0; a < cfg.q; ++a) {
            const std::size_t r0 = a * n / cfg.q, r1 = (a + 1) * n / cfg.q;
            for (std::size_t b = 0; b < cfg.q; ++b) {
                const std::size_t c0 = b * n / cfg.q, c1 = (b + 1) * n / cfg.q;
                std::size_t on = 0;
                for (std::size_t r = r0; r < r1; ++r) {
                    for (std::size_t c = c0; c < c1; ++c) on += img(r, c);
                }
                z[a * cfg.q + b] = static_cast<double>(on) / static_cast<double>((r1 - r0) * (c1 - c0));
            }
        }
    }
    const double scale = cfg.normalize_cap / std::sqrt(static_cast<double>(z.size()));
    for (auto& v : z) v *= scale;
    return z;
}

LossKind parse_loss(std::string_view name) {
    const auto n = trim(name);
    if (n == "hinge") return LossKind::hinge;
    if (n == "squared_hinge") return LossKind::squared_hinge;
    if (n == "exponential") return LossKind::exponential;
    throw InvalidArgument("unknown loss '" + std::string(name) +
                          "' (expected hinge, squared_hinge or exponential)");
}

std::string_view loss_name(LossKind kind) noexcept {
    switch (kind) {
    case LossKind::hinge: return "hinge";
    case LossKind::squared_hinge: return "squared_hinge";
    case LossKind::exponential: return "exponential";
    }
    return "?";
}

double aux_loss(LossKind kind, double a) noexcept {
    switch (kind) {
    case LossKind::hinge: return std::max(0.0, 1.0 - a);
    case LossKind::squared_hinge: {
        const double h = std::max(0.0, 1.0 - a);
        return h * h;
    }
    case LossKind::exponential: return std::exp(-a);
    }
    return 0.0;
}

double aux_subgradient(LossKind kind, double a) noexcept {
    switch (kind) {
    case LossKind::hinge: return a < 1.0 ? -1.0 : 0.0;
    case LossKind::squared_hinge: return -2.0 * std::max(0.0, 1.0 - a);
    case LossKind::exponential: return -std::exp(-a);
    }
    return 0.0;
}

LinearClassifier::LinearClassifier(std::size_t classes, std::size_t dim, double c_A, double c_B)
    : dim_(dim), c_A_(c_A), c_B_(c_B), weights_(classes * dim, 0.0), biases_(classes, 0.0) {
    if (classes < 1) throw InvalidArgument("classifier needs at least one class");
    if (!(c_A >= 0.0) || !(c_B >= 0.0)) throw InvalidArgument("caps must be nonnegative");
}

void LinearClassifier::project() {
    for (std::size_t y = 0; y < classes(); ++y) {
        auto r = row(y);
        double sq = 0.0;
        for (double v : r) sq += v * v;
        const double norm = std::sqrt(sq);
        if (norm > c_A_) {
            const double s = c_A_ / norm;
            for (auto& v : r) v *= s;
        }
        biases_[y] = std::clamp(biases_[y], -c_B_, c_B_);
    }
}

bool LinearClassifier::within_caps(double slack) const {
    for (std::size_t y = 0; y < classes(); ++y) {
        double sq = 0.0;
        for (double v : row(y)) sq += v * v;
        if (std::sqrt(sq) > c_A_ + slack || std::abs(biases_[y]) > c_B_ + slack) return false;
    }
    return true;
}

Vector score(const LinearClassifier& clf, std::span<const double> z) {
    if (z.size() != clf.dim()) {
        throw DimensionMismatch("feature dimension " + std::to_string(z.size()) +
                                " != classifier dimension " + std::to_string(clf.dim()));
    }
    Vector s(clf.classes());
    for (std::size_t y = 0; y < clf.classes(); ++y) {
        const auto r = clf.row(y);
        double acc = clf.bias(y);
        for (std::size_t i = 0; i < z.size(); ++i) acc += r[i] * z[i];
        s[y] = acc;
    }
    return s;
}

int predict(const LinearClassifier& clf, std::span<const double> z) {
    const Vector s = score(clf, z);
    // max_element returns the first maximum, i.e. the lowest class on ties
    return static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin()) + 1;
}

namespace {

struct MarginInfo {
    double margin;
    std::size_t rival; ///< 0-based index of the best other class
};

MarginInfo margin_info(const Vector& s, std::size_t y) {
    std::size_t rival = y == 0 ? 1 : 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k != y && s[k] > s[rival]) rival = k;
    }
    return {s[y] - s[rival], rival};
}

std::size_t class_index(int y, std::size_t classes) {
    if (classes < 2) throw InvalidArgument("max loss needs at least 2 classes");
    if (y < 1 || static_cast<std::size_t>(y) > classes) {
        throw InvalidArgument("label " + std::to_string(y) + " outside 1.." + std::to_string(classes));
    }
    return static_cast<std::size_t>(y - 1);
}

} // namespace

double margin(const LinearClassifier& clf, std::span<const double> z, int y) {
    const auto yi = class_index(y, clf.classes());
    return margin_info(score(clf, z), yi).margin;
}

double max_loss(const LinearClassifier& clf, std::span<const double> z, int y, LossKind kind) {
    return aux_loss(kind, margin(clf, z, y));
}

void FeatureSet::validate() const {
    if (features.empty()) throw EmptyInput("feature set is empty");
    if (features.size() != labels.size()) throw LengthMismatch("features and labels differ in count");
    for (const auto& f : features) {
        if (f.size() != features.front().size()) throw DimensionMismatch("features differ in dimension");
    }
    for (int y : labels) {
        if (y < 1 || y > classes) throw DataError("label outside 1..C");
    }
}

double empirical_phi_risk(const LinearClassifier& clf, const FeatureSet& data, LossKind kind) {
    data.validate();
    double sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        sum += max_loss(clf, data.features[i], data.labels[i], kind);
    }
    return sum / static_cast<double>(data.size());
}

namespace {

// Fixed chunking keeps the reduction order independent of the thread count.
constexpr std::size_t kChunk = 64;

struct Gradient {
    std::vector<double> weights;
    std::vector<double> biases;
    double loss = 0.0;
};

Gradient full_gradient(const LinearClassifier& clf, const FeatureSet& data, LossKind kind,
                       unsigned threads) {
    const std::size_t C = clf.classes(), p = clf.dim();
    const std::size_t chunks = (data.size() + kChunk - 1) / kChunk;
    std::vector<Gradient> partial(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        Gradient& g = partial[c];
        g.weights.assign(C * p, 0.0);
        g.biases.assign(C, 0.0);
        const std::size_t end = std::min(data.size(), (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            const auto& z = data.features[i];
            const auto y = static_cast<std::size_t>(data.labels[i] - 1);
            const auto info = margin_info(score(clf, z), y);
            g.loss += aux_loss(kind, info.margin);
            const double d = aux_subgradient(kind, info.margin);
            if (d == 0.0) continue;
            for (std::size_t k = 0; k < p; ++k) {
                g.weights[y * p + k] += d * z[k];
                g.weights[info.rival * p + k] -= d * z[k];
            }
            g.biases[y] += d;
            g.biases[info.rival] -= d;
        }
    });

    Gradient total;
    total.weights.assign(C * p, 0.0);
    total.biases.assign(C, 0.0);
    for (const auto& g : partial) {
        for (std::size_t k = 0; k < total.weights.size(); ++k) total.weights[k] += g.weights[k];
        for (std::size_t k = 0; k < C; ++k) total.biases[k] += g.biases[k];
        total.loss += g.loss;
    }
    const double inv_n = 1.0 / static_cast<double>(data.size());
    for (auto& v : total.weights) v *= inv_n;
    for (auto& v : total.biases) v *= inv_n;
    total.loss *= inv_n;
    return total;
}

} // namespace

TrainResult train(const FeatureSet& data, const TrainConfig& cfg) {
    data.validate();
    if (data.classes < 2) throw InvalidArgument("training needs at least 2 classes");
    if (!(cfg.eta0 > 0.0)) throw InvalidArgument("initial step size must be positive");

    const std::size_t C = static_cast<std::size_t>(data.classes);
    const std::size_t p = data.features.front().size();
    LinearClassifier current(C, p, cfg.c_A, cfg.c_B);
    TrainResult result{current, std::numeric_limits<double>::infinity(), {}};
    result.best_history.reserve(cfg.steps + 1);

    for (std::size_t t = 0;; ++t) {
        // loss at the current iterate comes out of the same pass as its subgradient
        const Gradient g = full_gradient(current, data, cfg.kind, cfg.threads);
        if (g.loss < result.best_risk) {
            result.best_risk = g.loss;
            result.model = current;
        }
        result.best_history.push_back(result.best_risk);
        if (t == cfg.steps) break;

        const double eta = cfg.eta0 / std::sqrt(static_cast<double>(t + 1));
        for (std::size_t y = 0; y < C; ++y) {
            auto r = current.row(y);
            for (std::size_t k = 0; k < p; ++k) r[k] -= eta * g.weights[y * p + k];
            current.bias(y) -= eta * g.biases[y];
        }
        current.project();
    }
    return result;
}

int knn_classify(const LabeledDataset& train, const MvIntervalSeries& query, std::size_t k,
                 const Kernel2x2& kernel) {
    if (train.items.empty()) throw EmptyInput("training set is empty");
    if (k < 1 || k > train.items.size()) {
        throw InvalidArgument("k must lie in 1.." + std::to_string(train.items.size()));
    }
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(train.items.size());
    for (std::size_t i = 0; i < train.items.size(); ++i) {
        dist.emplace_back(mv_series_dk_squared(train.items[i].series, query, kernel), i);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

    struct Vote {
        std::size_t count = 0;
        double total = 0.0;
    };
    std::map<int, Vote> votes;
    for (std::size_t i = 0; i < k; ++i) {
        auto& v = votes[train.items[dist[i].second].label];
        ++v.count;
        v.total += dist[i].first;
    }
    int best = votes.begin()->first;
    for (const auto& [label, v] : votes) {
        const auto& b = votes[best];
        if (v.count > b.count || (v.count == b.count && v.total < b.total)) best = label;
    }
    return best;
}

std::vector<int> knn_predict_all(const LabeledDataset& train, const LabeledDataset& queries,
                                 std::size_t k, const Kernel2x2& kernel, unsigned threads) {
    std::vector<int> out(queries.items.size());
    parallel_for(out.size(), threads, [&](std::size_t i) {
        out[i] = knn_classify(train, queries.items[i].series, k, kernel);
    });
    return out;
}

double accuracy(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size()) throw LengthMismatch("predictions and labels differ in count");
    if (predictions.empty()) throw EmptyInput("accuracy of an empty set");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) hits += predictions[i] == labels[i];
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

void save_model(const LinearClassifier& clf, LossKind kind, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << clf.classes() << ' ' << clf.dim() << ' ' << format_double(clf.c_A()) << ' '
        << format_double(clf.c_B()) << ' ' << loss_name(kind) << '\n';
    for (std::size_t y = 0; y < clf.classes(); ++y) {
        for (double w : clf.row(y)) out << format_double(w) << ' ';
        out << format_double(clf.bias(y)) << '\n';
    }
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

LinearClassifier load_model(const std::filesystem::path& path, LossKind* kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::string c_s, p_s, ca_s, cb_s, kind_s;
    if (!(in >> c_s >> p_s >> ca_s >> cb_s >> kind_s)) throw DataError("model header is incomplete");
    const auto C = parse_int(c_s);
    const auto p = parse_int(p_s);
    if (C < 1 || p < 0) throw DataError("model header has invalid sizes");
    const LossKind k = parse_loss(kind_s);
    if (kind) *kind = k;

    LinearClassifier clf(static_cast<std::size_t>(C), static_cast<std::size_t>(p),
                         parse_double(ca_s), parse_double(cb_s));
    std::string tok;
    for (std::size_t y = 0; y < clf.classes(); ++y) {
        for (auto& w : clf.row(y)) {
            if (!(in >> tok)) throw DataError("model weights are truncated");
            w = parse_double(tok);
        }
        if (!(in >> tok)) throw DataError("model biases are truncated");
        clf.bias(y) = parse_double(tok);
    }
    return clf;
}

} // namespace ivts
