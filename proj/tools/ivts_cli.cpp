// ivts: generate, ingest, image, classify and bound interval-valued time series.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ivts/classify.hpp"
#include "ivts/dgp.hpp"
#include "ivts/errors.hpp"
#include "ivts/experiment.hpp"
#include "ivts/imaging.hpp"
#include "ivts/ingest.hpp"
#include "ivts/parallel.hpp"
#include "ivts/text.hpp"
#include "ivts/theory.hpp"

namespace fs = std::filesystem;
using namespace ivts;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

constexpr const char* kRunConfigName = "run_config.ini";

unsigned resolve_threads(unsigned requested) { return requested == 0 ? default_threads() : requested; }

// Effective settings of the running subcommand as `sub.key=value` lines,
// readable again through --config. Unset options are omitted.
void echo_config(const CLI::App& app, const CLI::App& sub, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write config echo '" + path.string() + "'");
    const std::string prefix = sub.get_name() + ".";
    std::istringstream all(app.config_to_str(true, false));
    std::string line;
    while (std::getline(all, line)) {
        if (line.rfind(prefix, 0) != 0) continue;
        if (line.size() >= 3 && line.compare(line.size() - 3, 3, "=\"\"") == 0) continue;
        out << line << '\n';
    }
}

void ensure_parent(const fs::path& file) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

// Round-trip exact, unlike CLI11's captured defaults.
std::string list_str(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
    return out + "]";
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string scenario = "univariate";
    int dgp = 1;
    std::size_t per_class = 500;
    std::size_t T = 150;
    std::vector<double> rho = kDefaultRhoGrid;
    std::size_t truncation_L = 100;
    std::size_t burn_in = 100;
    std::uint64_t seed = 0;
    std::string out;
    unsigned threads = 0;
};

void add_generate(CLI::App& app, GenerateArgs& a) {
    auto* sub = app.add_subcommand("generate", "Simulate a labeled interval-valued dataset");
    sub->add_option("--scenario", a.scenario,
                    "univariate (one DGP, class per rho) | c1 (class per DGP, dim per rho) | "
                    "c2 (class per rho, dim per DGP) | dgp-classes (class per DGP, single rho)")
        ->check(CLI::IsMember({"univariate", "c1", "c2", "dgp-classes"}))
        ->capture_default_str();
    sub->add_option("--dgp", a.dgp, "DGP id for the univariate scenario")
        ->check(CLI::Range(1, 3))->capture_default_str();
    sub->add_option("--per-class", a.per_class, "Samples per class")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--T", a.T, "Series length")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--rho", a.rho, "Correlation grid (comma separated)")->delimiter(',')->default_str(list_str(a.rho));
    sub->add_option("--truncation-L", a.truncation_L, "DGP1 series cutoff")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--burn-in", a.burn_in, "DGP2 warm-up steps")->capture_default_str();
    sub->add_option("--seed", a.seed, "Base seed")->capture_default_str();
    sub->add_option("--out", a.out, "Output dataset CSV")->required();
    sub->add_option("--threads", a.threads, "Worker threads (0: IVTS_THREADS or all cores)")->envname("IVTS_THREADS");
}

int run_generate(const CLI::App& sub, const GenerateArgs& a) {
    for (double r : a.rho) {
        if (!std::isfinite(r) || std::abs(r) > 1.0) throw InvalidArgument("rho values must lie in [-1, 1]");
    }
    if (a.rho.empty()) throw InvalidArgument("rho grid must be nonempty");
    if (a.scenario == "dgp-classes" && a.rho.size() != 1) {
        throw InvalidArgument("dgp-classes takes exactly one --rho value");
    }

    DatasetOptions opts{a.truncation_L, a.burn_in, resolve_threads(a.threads)};
    LabeledDataset ds;
    if (a.scenario == "univariate") {
        ds = build_univariate_dataset(a.dgp, a.per_class, a.T, a.rho, a.seed, opts);
    } else if (a.scenario == "c1") {
        ds = build_multivariate_c1(a.per_class, a.T, a.seed, a.rho, opts);
    } else if (a.scenario == "c2") {
        ds = build_multivariate_c2(a.per_class, a.T, a.seed, a.rho, opts);
    } else {
        ds = build_dgp_classes(a.rho.front(), a.per_class, a.T, a.seed, opts);
    }

    const fs::path out(a.out);
    ensure_parent(out);
    write_dataset_csv(ds, out);
    echo_config(*sub.get_parent(), sub, fs::path(out).concat(".config.ini"));
    std::cout << "wrote " << out.string() << ": n=" << ds.items.size() << " C=" << ds.classes
              << " d=" << ds.dims() << " T=" << ds.length() << '\n';
    return 0;
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
    std::string in;
    std::string out;
    std::size_t window = 30;
    std::size_t stride = 0;
};

void add_ingest(CLI::App& app, IngestArgs& a) {
    auto* sub = app.add_subcommand("ingest", "Aggregate raw readings into daily-interval windows");
    sub->add_option("--in", a.in, "Raw CSV: series_id,dim,timestamp,value,label")->required();
    sub->add_option("--out", a.out, "Output dataset CSV")->required();
    sub->add_option("--window", a.window, "Days per series")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--stride", a.stride, "Days between window starts (0: same as window)")->capture_default_str();
}

int run_ingest(const CLI::App& sub, const IngestArgs& a) {
    IngestConfig cfg{a.window, a.stride};
    cfg.validate();
    const auto result = ingest_raw_csv(a.in, cfg);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

    const fs::path out(a.out);
    ensure_parent(out);
    write_dataset_csv(result.dataset, out);
    echo_config(*sub.get_parent(), sub, fs::path(out).concat(".config.ini"));
    const auto& ds = result.dataset;
    std::cout << "wrote " << out.string() << ": n=" << ds.items.size() << " C=" << ds.classes
              << " d=" << ds.dims() << " T=" << ds.length() << '\n';
    for (std::size_t j = 0; j < result.dim_names.size(); ++j) {
        std::cout << "  dim " << j << " = " << result.dim_names[j] << '\n';
    }
    for (std::size_t y = 0; y < result.label_names.size(); ++y) {
        if (!result.label_names[y].empty()) std::cout << "  label " << y + 1 << " = " << result.label_names[y] << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- image

struct ImagingArgs {
    std::string kernel = "K4";
    std::size_t m = 1;
    std::size_t kappa = 1;
    std::vector<double> epsilon{std::numbers::pi / 18.0};
};

void add_imaging_options(CLI::App* sub, ImagingArgs& a) {
    sub->add_option("--kernel", a.kernel, "K1..K5 or k_pp,k_pm,k_mm")->capture_default_str();
    sub->add_option("--m", a.m, "Trajectory length")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--kappa", a.kappa, "Time delay")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--epsilon", a.epsilon, "Threshold, or one per dimension (comma separated)")
        ->delimiter(',')->default_str(list_str(a.epsilon));
}

TrajectoryConfig trajectory_from(const ImagingArgs& a) {
    TrajectoryConfig cfg{a.m, a.kappa, a.epsilon};
    cfg.validate();
    return cfg;
}

struct ImageArgs {
    std::string data;
    std::string out_dir;
    std::string format = "pgm";
    std::string stem = "img";
    ImagingArgs imaging;
    unsigned threads = 0;
};

void add_image(CLI::App& app, ImageArgs& a) {
    auto* sub = app.add_subcommand("image", "Render each series as a recurrence image");
    sub->add_option("--data", a.data, "Dataset CSV")->required();
    sub->add_option("--out-dir", a.out_dir, "Output directory")->required();
    sub->add_option("--format", a.format, "pgm | csv | both")
        ->check(CLI::IsMember({"pgm", "csv", "both"}))->capture_default_str();
    sub->add_option("--stem", a.stem, "File name stem (<stem>_<index>.pgm)")->capture_default_str();
    add_imaging_options(sub, a.imaging);
    sub->add_option("--threads", a.threads, "Worker threads (0: IVTS_THREADS or all cores)")->envname("IVTS_THREADS");
}

int run_image(const CLI::App& sub, const ImageArgs& a) {
    const Kernel2x2 kernel = parse_kernel(a.imaging.kernel);
    const TrajectoryConfig traj = trajectory_from(a.imaging);
    if (a.stem.empty() || a.stem.find('/') != std::string::npos) throw InvalidArgument("invalid --stem");

    const LabeledDataset ds = read_dataset_csv(a.data);
    std::vector<MvIntervalSeries> series;
    series.reserve(ds.items.size());
    for (const auto& it : ds.items) series.push_back(it.series);
    const auto images = image_batch(series, traj, kernel, resolve_threads(a.threads));

    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    std::ofstream index(dir / "index.csv", std::ios::binary);
    if (!index) throw IoError("cannot write index in '" + dir.string() + "'");
    index << "file,item,label\n";
    for (std::size_t i = 0; i < images.size(); ++i) {
        const std::string base = a.stem + "_" + std::to_string(i);
        if (a.format != "csv") export_pgm(images[i], dir / (base + ".pgm"));
        if (a.format != "pgm") export_csv(images[i], dir / (base + ".csv"));
        index << base << (a.format == "csv" ? ".csv" : ".pgm") << ',' << i << ',' << ds.items[i].label << '\n';
    }
    echo_config(*sub.get_parent(), sub, dir / kRunConfigName);
    std::cout << "wrote " << images.size() << " images (N=" << (images.empty() ? 0 : images.front().size())
              << ", kernel " << kernel_label(kernel) << ") to " << dir.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
    std::string data;
    std::string images;
    std::string out_dir;
    std::string mode = "knn";
    std::size_t k = 1;
    ImagingArgs imaging;
    std::string features = "block_mean";
    std::size_t q = 5;
    double cap = 1.0;
    std::string loss = "hinge";
    std::size_t steps = 500;
    double eta0 = 0.5;
    double c_A = 1.0;
    double c_B = 1.0;
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    std::size_t runs = 1;
    std::string tag;
    unsigned threads = 0;
};

void add_classify(CLI::App& app, ClassifyArgs& a) {
    auto* sub = app.add_subcommand("classify", "Split, train and report test accuracy");
    auto* data = sub->add_option("--data", a.data, "Dataset CSV");
    auto* images = sub->add_option("--images", a.images, "Image directory written by `image` (linear mode)");
    data->excludes(images);
    sub->add_option("--out-dir", a.out_dir, "Output directory for report and model")->required();
    sub->add_option("--mode", a.mode, "knn | linear")->check(CLI::IsMember({"knn", "linear"}))->capture_default_str();
    sub->add_option("--k", a.k, "Neighbors for knn")->check(CLI::PositiveNumber)->capture_default_str();
    add_imaging_options(sub, a.imaging);
    sub->add_option("--features", a.features, "block_mean | flatten")
        ->check(CLI::IsMember({"block_mean", "flatten"}))->capture_default_str();
    sub->add_option("--q", a.q, "Block grid size")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--cap", a.cap, "Feature norm cap c_Z")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--loss", a.loss, "hinge | squared_hinge | exponential")->capture_default_str();
    sub->add_option("--steps", a.steps, "Training steps")->capture_default_str();
    sub->add_option("--eta0", a.eta0, "Initial step size")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--c-A", a.c_A, "Weight row norm cap")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--c-B", a.c_B, "Bias magnitude cap")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--train-fraction", a.train_fraction, "Training share per class")->capture_default_str();
    sub->add_option("--seed", a.seed, "Split seed")->capture_default_str();
    sub->add_option("--runs", a.runs, "Repeated splits")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--tag", a.tag, "Value of the report's dgp column (default: data file stem)");
    sub->add_option("--threads", a.threads, "Worker threads (0: IVTS_THREADS or all cores)")->envname("IVTS_THREADS");
}

// Reads index.csv written by `image` and the images it lists.
void load_image_dir(const fs::path& dir, std::vector<RecurrenceImage>& images, std::vector<int>& labels) {
    std::ifstream in(dir / "index.csv", std::ios::binary);
    if (!in) throw IoError("no index.csv in '" + dir.string() + "'");
    std::string line;
    std::getline(in, line);
    if (trim(line) != "file,item,label") throw DataError("unexpected index.csv header");
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 3) throw DataError("malformed index.csv row");
        const fs::path file = dir / std::string(f[0]);
        images.push_back(file.extension() == ".csv" ? read_csv_image(file) : read_pgm(file));
        labels.push_back(static_cast<int>(parse_int(f[2])));
    }
    if (images.empty()) throw EmptyInput("image directory lists no images");
}

int run_classify(const CLI::App& sub, const ClassifyArgs& a) {
    if (a.data.empty() == a.images.empty()) throw InvalidArgument("give exactly one of --data or --images");
    if (!a.images.empty() && a.mode == "knn") {
        throw InvalidArgument("knn works on series distances and needs --data");
    }
    ProtocolConfig cfg;
    cfg.mode = a.mode == "knn" ? ClassifierMode::knn : ClassifierMode::linear;
    cfg.kernel = parse_kernel(a.imaging.kernel);
    cfg.trajectory = trajectory_from(a.imaging);
    cfg.train_fraction = a.train_fraction;
    cfg.k = a.k;
    cfg.features.mode = a.features == "flatten" ? FeatureConfig::Mode::flatten : FeatureConfig::Mode::block_mean;
    cfg.features.q = a.q;
    cfg.features.normalize_cap = a.cap;
    cfg.training = {parse_loss(a.loss), a.steps, a.eta0, a.c_A, a.c_B, 1};
    cfg.threads = resolve_threads(a.threads);
    cfg.validate();

    const fs::path source(a.data.empty() ? a.images : a.data);
    const std::string tag = a.tag.empty() ? source.stem().string() : a.tag;
    if (tag.find(',') != std::string::npos) throw InvalidArgument("--tag must not contain commas");

    std::vector<ReportRow> rows;
    std::vector<RunOutcome> outcomes;
    if (!a.data.empty()) {
        const LabeledDataset ds = read_dataset_csv(a.data);
        for (std::size_t r = 0; r < a.runs; ++r) {
            outcomes.push_back(run_protocol(ds, cfg, derive_seed(a.seed, r)));
        }
    } else {
        std::vector<RecurrenceImage> images;
        std::vector<int> labels;
        load_image_dir(source, images, labels);
        int classes = 0;
        for (int y : labels) classes = std::max(classes, y);
        for (std::size_t r = 0; r < a.runs; ++r) {
            const auto mask = stratified_train_mask(labels, classes, cfg.train_fraction, derive_seed(a.seed, r));
            outcomes.push_back(run_linear_on_images(images, labels, classes, mask, cfg));
        }
    }

    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    std::vector<double> accs;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        rows.push_back({r, kernel_label(cfg.kernel), tag, a.seed, outcomes[r].accuracy});
        accs.push_back(outcomes[r].accuracy);
        if (outcomes[r].model) {
            const std::string name = outcomes.size() == 1 ? "model.txt" : "model_" + std::to_string(r) + ".txt";
            save_model(*outcomes[r].model, cfg.training.kind, dir / name);
        }
        std::cout << "run " << r << ": accuracy " << fmt(outcomes[r].accuracy) << '\n';
    }
    write_report(rows, dir / "report.csv");
    echo_config(*sub.get_parent(), sub, dir / kRunConfigName);
    std::cout << "median accuracy " << fmt(median(accs)) << " over " << accs.size() << " run(s)\n";
    return 0;
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
    double ell = 0.0;
    std::string loss = "hinge";
    double c_A = 1.0;
    double c_B = 1.0;
    double c_Z = 1.0;
    std::size_t n = 0;
    double log_covering = 0.0;
    double varrho = 0.0;
    bool mc = false;
    std::string data;
    std::size_t p = 2;
    std::size_t mc_draws = 256;
    std::size_t inner_steps = 200;
    std::uint64_t seed = 0;
    bool json = false;
    unsigned threads = 0;
    ImagingArgs imaging;
    std::size_t q = 5;
};

void add_bound(CLI::App& app, BoundArgs& a) {
    auto* sub = app.add_subcommand("bound", "Evaluate the excess-risk bound calculators");
    sub->add_option("--ell", a.ell, "Lipschitz constant (default: from --loss)");
    sub->add_option("--loss", a.loss, "hinge | squared_hinge | exponential")->capture_default_str();
    sub->add_option("--c-A", a.c_A, "Weight cap")->required();
    sub->add_option("--c-B", a.c_B, "Bias cap")->required();
    sub->add_option("--c-Z", a.c_Z, "Feature norm cap")->required();
    sub->add_option("--n", a.n, "Sample count")->required();
    sub->add_option("--log-covering", a.log_covering, "log E N_inf(delta, F, S_n)")->required();
    sub->add_option("--varrho", a.varrho, "Offset parameter (default: 1/(4 l (c_A c_Z + c_B)))");
    sub->add_flag("--mc", a.mc, "Add a Monte-Carlo offset Rademacher estimate");
    sub->add_option("--data", a.data, "Dataset CSV whose block-mean image features feed --mc");
    sub->add_option("--p", a.p, "Feature dimension of the synthetic --mc sample when --data is absent")
        ->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--q", a.q, "Block grid for --data features")->check(CLI::PositiveNumber)->capture_default_str();
    add_imaging_options(sub, a.imaging);
    sub->add_option("--mc-draws", a.mc_draws, "Rademacher draws")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--inner-steps", a.inner_steps, "Ascent steps per draw")->capture_default_str();
    sub->add_option("--seed", a.seed, "Seed for --mc")->capture_default_str();
    sub->add_flag("--json", a.json, "Emit JSON instead of text");
    sub->add_option("--threads", a.threads, "Worker threads (0: IVTS_THREADS or all cores)")->envname("IVTS_THREADS");
}

int run_bound(const BoundArgs& a) {
    const double ell = a.ell > 0.0 ? a.ell : lipschitz_constant(parse_loss(a.loss));
    RiskBoundInputs in{ell, a.c_A, a.c_B, a.c_Z, a.n, a.log_covering, 0.0};
    in.varrho = a.varrho > 0.0 ? a.varrho : excess_risk_varrho(ell, a.c_A, a.c_B, a.c_Z);
    in.validate();

    const GBounds g = g_bounds(ell, a.c_A, a.c_Z, a.c_B);
    const double offset = offset_rademacher_bound(in);
    const double excess = excess_risk_bound(ell, a.c_A, a.c_B, a.c_Z, a.n, a.log_covering);

    nlohmann::ordered_json report;
    report["inputs"] = {{"ell", ell}, {"c_A", a.c_A}, {"c_B", a.c_B}, {"c_Z", a.c_Z},
                        {"n", a.n}, {"log_covering", a.log_covering}, {"varrho", in.varrho}};
    report["g_bound_single"] = g.single;
    report["g_bound_pair"] = g.pair;
    report["offset_rademacher_bound"] = offset;
    report["excess_risk_bound"] = excess;

    if (a.mc) {
        std::vector<Vector> features;
        if (!a.data.empty()) {
            const LabeledDataset ds = read_dataset_csv(a.data);
            std::vector<MvIntervalSeries> series;
            for (const auto& it : ds.items) series.push_back(it.series);
            const auto images = image_batch(series, trajectory_from(a.imaging), parse_kernel(a.imaging.kernel),
                                            resolve_threads(a.threads));
            const FeatureConfig fc{FeatureConfig::Mode::block_mean, a.q, a.c_Z};
            for (const auto& img : images) features.push_back(featurize(img, fc));
        } else {
            // n points drawn uniformly on the c_Z sphere in R^p
            Rng rng(derive_seed(a.seed, 0xFEA7));
            for (std::size_t i = 0; i < a.n; ++i) {
                Vector z(a.p);
                double sq = 0.0;
                for (auto& v : z) {
                    v = rng.gaussian();
                    sq += v * v;
                }
                const double s = sq > 0.0 ? a.c_Z / std::sqrt(sq) : 0.0;
                for (auto& v : z) v *= s;
                features.push_back(std::move(z));
            }
        }
        const RademacherConfig rc{a.c_A, a.c_B, in.varrho, a.mc_draws, a.inner_steps, a.seed,
                                  resolve_threads(a.threads)};
        const auto est = empirical_offset_rademacher(features, rc);
        report["mc_offset_rademacher"] = {{"value", est.value}, {"mc_draws", est.mc_draws},
                                          {"inner_steps", est.inner_steps}, {"samples", features.size()}};
    }

    if (a.json) {
        std::cout << report.dump(2) << '\n';
        return 0;
    }
    std::cout << "inputs: ell=" << fmt(ell) << " c_A=" << fmt(a.c_A) << " c_B=" << fmt(a.c_B)
              << " c_Z=" << fmt(a.c_Z) << " n=" << a.n << " log_covering=" << fmt(a.log_covering)
              << " varrho=" << fmt(in.varrho) << '\n';
    std::cout << "g_bound_single = " << fmt(g.single) << '\n';
    std::cout << "g_bound_pair = " << fmt(g.pair) << '\n';
    std::cout << "offset_rademacher_bound = " << fmt(offset) << '\n';
    std::cout << "excess_risk_bound = " << fmt(excess) << '\n';
    if (a.mc) {
        const auto& mc = report["mc_offset_rademacher"];
        std::cout << "mc_offset_rademacher = " << fmt(mc["value"].get<double>()) << " (draws="
                  << a.mc_draws << ", inner_steps=" << a.inner_steps << ", samples="
                  << mc["samples"].get<std::size_t>() << ")\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interval-valued time series imaging and classification"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file; keys are <command>.<option>, e.g. classify.k=1");
    app.fallthrough();

    GenerateArgs gen;
    IngestArgs ing;
    ImageArgs img;
    ClassifyArgs cls;
    BoundArgs bnd;
    add_generate(app, gen);
    add_ingest(app, ing);
    add_image(app, img);
    add_classify(app, cls);
    add_bound(app, bnd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "generate") return run_generate(*sub, gen);
        if (name == "ingest") return run_ingest(*sub, ing);
        if (name == "image") return run_image(*sub, img);
        if (name == "classify") return run_classify(*sub, cls);
        return run_bound(bnd);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case ErrorKind::usage: return kExitUsage;
        case ErrorKind::data: return kExitData;
        case ErrorKind::numeric: return kExitNumeric;
        }
        return kExitData;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
}
