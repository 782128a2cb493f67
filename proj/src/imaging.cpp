#include "ivts/imaging.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "ivts/errors.hpp"
#include "ivts/parallel.hpp"
#include "ivts/text.hpp"

namespace ivts {

void TrajectoryConfig::validate() const {
    if (m < 1) throw InvalidArgument("trajectory length m must be >= 1");
    if (kappa < 1) throw InvalidArgument("time delay kappa must be >= 1");
    if (epsilon.empty()) throw InvalidArgument("at least one threshold is required");
    for (double e : epsilon) {
        if (!std::isfinite(e) || e < 0.0) {
            throw InvalidArgument("thresholds must be finite and >= 0");
        }
    }
}

double TrajectoryConfig::epsilon_for(std::size_t j, std::size_t d) const {
    if (epsilon.size() == 1) return epsilon.front();
    if (epsilon.size() != d) {
        throw DimensionMismatch("got " + std::to_string(epsilon.size()) +
                                " thresholds for " + std::to_string(d) + " dimensions");
    }
    return epsilon[j];
}

std::size_t TrajectoryConfig::trajectory_count(std::size_t T) const noexcept {
    const std::size_t span = (m - 1) * kappa;
    return T > span ? T - span : 0;
}

RecurrenceImage::RecurrenceImage(std::size_t n, std::uint8_t fill)
    : n_(n), pixels_(n * n, fill) {}

namespace {

std::size_t checked_count(std::size_t T, const TrajectoryConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.trajectory_count(T);
    if (n == 0) {
        throw SeriesTooShort("series of length " + std::to_string(T) + " needs at least " +
                             std::to_string((cfg.m - 1) * cfg.kappa + 1) + " steps for m=" +
                             std::to_string(cfg.m) + ", kappa=" + std::to_string(cfg.kappa));
    }
    return n;
}

RecurrenceImage threshold_plot(const IntervalSeries& x, const TrajectoryConfig& cfg,
                               const Kernel2x2& k, double eps) {
    const std::size_t n = checked_count(x.length(), cfg);
    const auto values = x.values();
    RecurrenceImage img(n);
    for (std::size_t j = 0; j < n; ++j) {
        img.set(j, j, heaviside(eps) == 1);
        for (std::size_t i = j + 1; i < n; ++i) {
            double sq = 0.0;
            for (std::size_t s = 0; s < cfg.m; ++s) {
                sq += dk_squared(values[j + s * cfg.kappa], values[i + s * cfg.kappa], k);
            }
            const bool on = heaviside(eps - checked_sqrt(sq)) == 1;
            img.set(j, i, on);
            img.set(i, j, on);
        }
    }
    return img;
}

} // namespace

std::vector<Trajectory> extract_trajectories(const IntervalSeries& x, const TrajectoryConfig& cfg) {
    const std::size_t n = checked_count(x.length(), cfg);
    std::vector<Trajectory> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j].reserve(cfg.m);
        for (std::size_t s = 0; s < cfg.m; ++s) out[j].push_back(x[j + s * cfg.kappa]);
    }
    return out;
}

double trajectory_dk(std::span<const Interval> ta, std::span<const Interval> tb, const Kernel2x2& k) {
    if (ta.size() != tb.size()) {
        throw LengthMismatch("trajectory lengths differ");
    }
    double sq = 0.0;
    for (std::size_t s = 0; s < ta.size(); ++s) sq += dk_squared(ta[s], tb[s], k);
    return checked_sqrt(sq);
}

RecurrenceImage irp(const IntervalSeries& x, const TrajectoryConfig& cfg, const Kernel2x2& k) {
    return threshold_plot(x, cfg, k, cfg.epsilon_for(0, 1));
}

RecurrenceImage ijrp(const MvIntervalSeries& w, const TrajectoryConfig& cfg, const Kernel2x2& k) {
    const std::size_t d = w.dims();
    // resolve all thresholds up front so a bad vector fails before any work
    std::vector<double> eps(d);
    for (std::size_t j = 0; j < d; ++j) eps[j] = cfg.epsilon_for(j, d);

    RecurrenceImage joint = threshold_plot(w.dim(0), cfg, k, eps[0]);
    for (std::size_t j = 1; j < d; ++j) {
        const RecurrenceImage part = threshold_plot(w.dim(j), cfg, k, eps[j]);
        for (std::size_t r = 0; r < joint.size(); ++r) {
            for (std::size_t c = 0; c < joint.size(); ++c) {
                joint.set(r, c, joint(r, c) * part(r, c) != 0);
            }
        }
    }
    return joint;
}

RecurrenceImage recurrence_image(const MvIntervalSeries& w, const TrajectoryConfig& cfg,
                                 const Kernel2x2& k) {
    if (w.dims() == 1) return irp(w.dim(0), cfg, k);
    return ijrp(w, cfg, k);
}

std::vector<RecurrenceImage> image_batch(std::span<const MvIntervalSeries> items,
                                         const TrajectoryConfig& cfg, const Kernel2x2& k,
                                         unsigned threads) {
    cfg.validate();
    std::vector<RecurrenceImage> out(items.size());
    parallel_for(items.size(), threads, [&](std::size_t i) {
        try {
            out[i] = recurrence_image(items[i], cfg, k);
        } catch (const Error& e) {
            e.rethrow_prefixed("item " + std::to_string(i) + ": ");
        }
    });
    return out;
}

void export_pgm(const RecurrenceImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "P5\n" << img.size() << ' ' << img.size() << "\n255\n";
    std::string row(img.size(), '\0');
    for (std::size_t j = 0; j < img.size(); ++j) {
        for (std::size_t k = 0; k < img.size(); ++k) {
            row[k] = static_cast<char>(img(j, k) ? 0xFF : 0x00);
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void export_csv(const RecurrenceImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    for (std::size_t j = 0; j < img.size(); ++j) {
        for (std::size_t k = 0; k < img.size(); ++k) {
            if (k) out << ',';
            out << static_cast<int>(img(j, k));
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

namespace {

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Next whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(const std::string& data, std::size_t& pos) {
    while (pos < data.size()) {
        if (data[pos] == '#') {
            while (pos < data.size() && data[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(data[pos]))) {
            ++pos;
        } else {
            break;
        }
    }
    const std::size_t start = pos;
    while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    return data.substr(start, pos - start);
}

} // namespace

RecurrenceImage read_pgm(const std::filesystem::path& path) {
    const std::string data = read_all(path);
    std::size_t pos = 0;
    if (pgm_token(data, pos) != "P5") throw DataError("'" + path.string() + "' is not a P5 PGM");
    const auto w = parse_int(pgm_token(data, pos));
    const auto h = parse_int(pgm_token(data, pos));
    const auto maxval = parse_int(pgm_token(data, pos));
    if (w != h || w <= 0) throw DataError("recurrence images must be square");
    if (maxval != 255) throw DataError("expected maxval 255");
    ++pos; // single whitespace byte before the raster
    const auto n = static_cast<std::size_t>(w);
    if (data.size() - pos != n * n) throw DataError("truncated PGM raster in '" + path.string() + "'");

    RecurrenceImage img(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto v = static_cast<unsigned char>(data[pos + j * n + k]);
            if (v != 0 && v != 255) throw DataError("non-binary pixel in '" + path.string() + "'");
            img.set(j, k, v == 255);
        }
    }
    return img;
}

RecurrenceImage read_csv_image(const std::filesystem::path& path) {
    std::istringstream in(read_all(path));
    std::vector<std::vector<std::uint8_t>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::uint8_t> row;
        for (auto field : split(line, ',')) {
            const auto v = parse_int(field);
            if (v != 0 && v != 1) throw DataError("non-binary entry in '" + path.string() + "'");
            row.push_back(static_cast<std::uint8_t>(v));
        }
        rows.push_back(std::move(row));
    }
    RecurrenceImage img(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != rows.size()) throw DataError("CSV image is not square");
        for (std::size_t k = 0; k < rows.size(); ++k) img.set(j, k, rows[j][k] != 0);
    }
    return img;
}

} // namespace ivts
