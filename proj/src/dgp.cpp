#include "ivts/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <string>

#include "ivts/errors.hpp"
#include "ivts/parallel.hpp"
#include "ivts/text.hpp"

namespace ivts {

void DgpConfig::validate() const {
    if (!std::isfinite(rho) || std::abs(rho) > 1.0) throw InvalidArgument("rho must lie in [-1, 1]");
    if (T < 1) throw InvalidArgument("T must be >= 1");
    if (truncation_L < 1) throw InvalidArgument("truncation_L must be >= 1");
}

Vec2 sample_residual(double rho, Rng& rng) {
    if (!(std::abs(rho) <= 1.0)) throw InvalidArgument("rho must lie in [-1, 1]");
    const double z1 = rng.gaussian();
    const double z2 = rng.gaussian();
    // L = [[1, 0], [rho/2, sqrt(1/4 - rho^2/4)]]
    const double l22 = std::sqrt(std::max(0.0, 0.25 - rho * rho / 4.0));
    return {z1, rho / 2.0 * z1 + l22 * z2};
}

double dgp1_weight(std::size_t l) {
    const auto ld = static_cast<double>(l);
    return 1.0 / (ld * ld * std::sqrt(3.0));
}

std::vector<Vec2> gen_dgp1(const DgpConfig& cfg, Rng& rng) {
    cfg.validate();
    std::vector<Vec2> out(cfg.T);
    for (auto& x : out) {
        const Vec2 eps = sample_residual(cfg.rho, rng);
        Vec2 acc{dgp1_weight(1), dgp1_weight(1)};
        for (std::size_t l = 2; l <= cfg.truncation_L; ++l) {
            const Vec2 z = sample_residual(cfg.rho, rng);
            const double w = dgp1_weight(l);
            acc.c += w * z.c;
            acc.r += w * z.r;
        }
        const Vec2 mixed = kPhi * acc;
        x = {mixed.c + eps.c, mixed.r + eps.r};
    }
    return out;
}

std::vector<Vec2> varma_from_residuals(std::span<const Vec2> residuals, std::size_t burn_in,
                                       const Mat2& phi, const Mat2& gamma) {
    if (burn_in > residuals.size()) throw InvalidArgument("burn-in exceeds residual count");
    std::vector<Vec2> out;
    out.reserve(residuals.size() - burn_in);
    Vec2 x{};
    Vec2 prev_eps{};
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        const Vec2 ar = phi * x;
        const Vec2 ma = gamma * prev_eps;
        x = {ar.c + residuals[t].c - ma.c, ar.r + residuals[t].r - ma.r};
        prev_eps = residuals[t];
        if (t >= burn_in) out.push_back(x);
    }
    return out;
}

std::vector<Vec2> ma_from_residuals(std::span<const Vec2> residuals, const Mat2& gamma) {
    std::vector<Vec2> out;
    out.reserve(residuals.size());
    Vec2 prev_eps{};
    for (const auto& eps : residuals) {
        const Vec2 ma = gamma * prev_eps;
        out.push_back({eps.c - ma.c, eps.r - ma.r});
        prev_eps = eps;
    }
    return out;
}

std::vector<Vec2> gen_dgp2(const DgpConfig& cfg, Rng& rng) {
    cfg.validate();
    std::vector<Vec2> eps(cfg.burn_in + cfg.T);
    for (auto& e : eps) e = sample_residual(cfg.rho, rng);
    return varma_from_residuals(eps, cfg.burn_in);
}

std::vector<Vec2> gen_dgp3(const DgpConfig& cfg, Rng& rng) {
    cfg.validate();
    std::vector<Vec2> eps(cfg.T);
    for (auto& e : eps) e = sample_residual(cfg.rho, rng);
    return ma_from_residuals(eps);
}

IntervalSeries to_interval_series(std::span<const Vec2> cr) {
    std::vector<Interval> values;
    values.reserve(cr.size());
    for (const auto& v : cr) values.push_back(compose(v.c, v.r));
    return IntervalSeries(std::move(values));
}

IntervalSeries generate_series(int dgp_id, const DgpConfig& cfg) {
    Rng rng(cfg.seed);
    switch (dgp_id) {
    case 1: return to_interval_series(gen_dgp1(cfg, rng));
    case 2: return to_interval_series(gen_dgp2(cfg, rng));
    case 3: return to_interval_series(gen_dgp3(cfg, rng));
    default: throw InvalidArgument("dgp id must be 1, 2 or 3, got " + std::to_string(dgp_id));
    }
}

void LabeledDataset::validate() const {
    if (items.empty()) throw EmptyInput("dataset is empty");
    if (classes < 1) throw DataError("dataset needs at least one class");
    for (const auto& it : items) {
        if (it.label < 1 || it.label > classes) {
            throw DataError("label " + std::to_string(it.label) + " outside 1.." +
                            std::to_string(classes));
        }
    }
}

namespace {

// One cell of a dataset plan: which process and correlation feed each dimension.
struct DimSpec {
    int dgp_id;
    double rho;
};

struct ItemSpec {
    std::vector<DimSpec> dims;
    int label;
};

LabeledDataset realize(const std::vector<ItemSpec>& plan, int classes, std::size_t T,
                       std::uint64_t seed, const DatasetOptions& opts) {
    LabeledDataset ds;
    ds.classes = classes;
    ds.items.resize(plan.size());
    parallel_for(plan.size(), opts.threads, [&](std::size_t i) {
        const std::uint64_t item_seed = derive_seed(seed, i);
        std::vector<IntervalSeries> rows;
        rows.reserve(plan[i].dims.size());
        for (std::size_t j = 0; j < plan[i].dims.size(); ++j) {
            DgpConfig cfg;
            cfg.rho = plan[i].dims[j].rho;
            cfg.T = T;
            cfg.truncation_L = opts.truncation_L;
            cfg.burn_in = opts.burn_in;
            cfg.seed = derive_seed(item_seed, j);
            rows.push_back(generate_series(plan[i].dims[j].dgp_id, cfg));
        }
        ds.items[i] = {MvIntervalSeries(std::move(rows)), plan[i].label};
    });
    return ds;
}

void check_common(std::size_t per_class_n, std::size_t T, std::span<const double> rho_grid) {
    if (per_class_n < 1) throw InvalidArgument("per-class count must be >= 1");
    if (T < 1) throw InvalidArgument("T must be >= 1");
    if (rho_grid.empty()) throw InvalidArgument("rho grid must be nonempty");
    for (double r : rho_grid) {
        if (!std::isfinite(r) || std::abs(r) > 1.0) throw InvalidArgument("rho must lie in [-1, 1]");
    }
}

} // namespace

LabeledDataset build_univariate_dataset(int dgp_id, std::size_t per_class_n, std::size_t T,
                                        std::span<const double> rho_grid, std::uint64_t seed,
                                        const DatasetOptions& opts) {
    check_common(per_class_n, T, rho_grid);
    if (dgp_id < 1 || dgp_id > 3) throw InvalidArgument("dgp id must be 1, 2 or 3");
    std::vector<ItemSpec> plan;
    for (std::size_t c = 0; c < rho_grid.size(); ++c) {
        for (std::size_t i = 0; i < per_class_n; ++i) {
            plan.push_back({{{dgp_id, rho_grid[c]}}, static_cast<int>(c + 1)});
        }
    }
    return realize(plan, static_cast<int>(rho_grid.size()), T, seed, opts);
}

LabeledDataset build_multivariate_c1(std::size_t per_class_n, std::size_t T, std::uint64_t seed,
                                     std::span<const double> rho_grid, const DatasetOptions& opts) {
    check_common(per_class_n, T, rho_grid);
    std::vector<ItemSpec> plan;
    for (int dgp = 1; dgp <= 3; ++dgp) {
        std::vector<DimSpec> dims;
        for (double r : rho_grid) dims.push_back({dgp, r});
        for (std::size_t i = 0; i < per_class_n; ++i) plan.push_back({dims, dgp});
    }
    return realize(plan, 3, T, seed, opts);
}

LabeledDataset build_multivariate_c2(std::size_t per_class_n, std::size_t T, std::uint64_t seed,
                                     std::span<const double> rho_grid, const DatasetOptions& opts) {
    check_common(per_class_n, T, rho_grid);
    std::vector<ItemSpec> plan;
    for (std::size_t c = 0; c < rho_grid.size(); ++c) {
        const std::vector<DimSpec> dims{{1, rho_grid[c]}, {2, rho_grid[c]}, {3, rho_grid[c]}};
        for (std::size_t i = 0; i < per_class_n; ++i) plan.push_back({dims, static_cast<int>(c + 1)});
    }
    return realize(plan, static_cast<int>(rho_grid.size()), T, seed, opts);
}

LabeledDataset build_dgp_classes(double rho, std::size_t per_class_n, std::size_t T,
                                 std::uint64_t seed, const DatasetOptions& opts) {
    const double grid[] = {rho};
    check_common(per_class_n, T, grid);
    std::vector<ItemSpec> plan;
    for (int dgp = 1; dgp <= 3; ++dgp) {
        for (std::size_t i = 0; i < per_class_n; ++i) plan.push_back({{{dgp, rho}}, dgp});
    }
    return realize(plan, 3, T, seed, opts);
}

std::vector<bool> stratified_train_mask(std::span<const int> labels, int classes,
                                        double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw InvalidArgument("train fraction must lie strictly between 0 and 1");
    }
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(std::max(classes, 0)));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 1 || labels[i] > classes) throw DataError("label outside 1..C");
        by_class[static_cast<std::size_t>(labels[i] - 1)].push_back(i);
    }

    Rng rng(seed);
    std::vector<bool> in_train(labels.size(), false);
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& idx = by_class[c];
        if (idx.empty()) continue;
        if (idx.size() < 2) {
            throw DataError("class " + std::to_string(c + 1) + " has fewer than 2 items");
        }
        std::shuffle(idx.begin(), idx.end(), rng.engine());
        auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(idx.size())));
        n_train = std::clamp<std::size_t>(n_train, 1, idx.size() - 1);
        for (std::size_t i = 0; i < n_train; ++i) in_train[idx[i]] = true;
    }
    return in_train;
}

std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& ds,
                                                           double train_fraction,
                                                           std::uint64_t seed) {
    ds.validate();
    std::vector<int> labels;
    labels.reserve(ds.items.size());
    for (const auto& it : ds.items) labels.push_back(it.label);
    const auto in_train = stratified_train_mask(labels, ds.classes, train_fraction, seed);

    std::pair<LabeledDataset, LabeledDataset> parts;
    parts.first.classes = parts.second.classes = ds.classes;
    for (std::size_t i = 0; i < ds.items.size(); ++i) {
        (in_train[i] ? parts.first : parts.second).items.push_back(ds.items[i]);
    }
    return parts;
}

void write_dataset_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "item,dim,t,lower,upper,label\n";
    for (std::size_t i = 0; i < ds.items.size(); ++i) {
        const auto& s = ds.items[i].series;
        for (std::size_t j = 0; j < s.dims(); ++j) {
            for (std::size_t t = 0; t < s.length(); ++t) {
                const Interval& v = s.dim(j)[t];
                out << i << ',' << j << ',' << t << ',' << format_double(v.lower()) << ','
                    << format_double(v.upper()) << ',' << ds.items[i].label << '\n';
            }
        }
    }
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

LabeledDataset read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");

    struct Raw {
        std::map<long long, std::map<long long, Interval>> dims;
        int label = 0;
    };
    std::map<long long, Raw> items;

    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (trim(line) != "item,dim,t,lower,upper,label") {
                throw DataError(path.string() + ": expected header item,dim,t,lower,upper,label");
            }
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 6) {
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected 6 fields");
        }
        try {
            const auto item = parse_int(f[0]);
            const auto dim = parse_int(f[1]);
            const auto t = parse_int(f[2]);
            const auto label = parse_int(f[5]);
            if (dim < 0 || t < 0 || label < 1) throw DataError("negative index or label < 1");
            Raw& raw = items[item];
            if (raw.label != 0 && raw.label != label) throw DataError("inconsistent label for item");
            raw.label = static_cast<int>(label);
            if (!raw.dims[dim].emplace(t, Interval(parse_double(f[3]), parse_double(f[4]))).second) {
                throw DataError("duplicate (item, dim, t) row");
            }
        } catch (const Error& e) {
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (items.empty()) throw EmptyInput(path.string() + ": no data rows");

    LabeledDataset ds;
    for (auto& [id, raw] : items) {
        std::vector<IntervalSeries> rows;
        long long expect_dim = 0;
        for (auto& [dim, steps] : raw.dims) {
            long long expect_t = 0;
            std::vector<Interval> values;
            for (auto& [t, v] : steps) {
                if (t != expect_t++) {
                    throw DataError("item " + std::to_string(id) + " dim " + std::to_string(dim) +
                                    ": time steps are not contiguous from 0");
                }
                values.push_back(v);
            }
            if (dim != expect_dim++) {
                throw DataError("item " + std::to_string(id) + ": dimensions are not contiguous from 0");
            }
            rows.emplace_back(std::move(values));
        }
        try {
            ds.items.push_back({MvIntervalSeries(std::move(rows)), raw.label});
        } catch (const Error& e) {
            throw DataError("item " + std::to_string(id) + ": " + e.what());
        }
        ds.classes = std::max(ds.classes, raw.label);
    }
    for (const auto& it : ds.items) {
        if (it.series.dims() != ds.items.front().series.dims()) {
            throw DataError(path.string() + ": items disagree on dimension count");
        }
    }
    return ds;
}

} // namespace ivts
