#pragma once

// Random generators and brute-force oracles shared by the unit and
// acceptance suites. Nothing here calls into the code paths it checks.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ivts/interval.hpp"
#include "ivts/imaging.hpp"

namespace ivts::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    std::size_t index(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
    }
    /// Possibly improper interval with bounds in [-10, 10].
    Interval interval() { return Interval(uniform(-10, 10), uniform(-10, 10)); }
    Kernel2x2 symmetric_kernel() { return {uniform(-3, 3), uniform(-3, 3), uniform(-3, 3)}; }
    IntervalSeries series(std::size_t T, double spread = 1.0) {
        std::vector<Interval> v;
        for (std::size_t t = 0; t < T; ++t) {
            const double c = uniform(-spread, spread);
            const double r = uniform(0, spread / 2);
            v.emplace_back(c - r, c + r);
        }
        return IntervalSeries(std::move(v));
    }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Literal evaluation of the support-function double sum over {-1,+1}^2:
/// sum_{u,v} (s_A(u) - s_B(u)) (s_A(v) - s_B(v)) K(u, v), with s_A(1) = upper
/// and s_A(-1) = -lower.
inline double support_sum_oracle(const Interval& a, const Interval& b, const Kernel2x2& k) {
    const std::array<int, 2> sphere{1, -1};
    auto support = [](const Interval& x, int u) { return u == 1 ? x.upper() : -x.lower(); };
    auto kern = [&](int u, int v) {
        if (u == 1 && v == 1) return k.k_pp;
        if (u == -1 && v == -1) return k.k_mm;
        return k.k_pm;
    };
    double sum = 0.0;
    for (int u : sphere) {
        for (int v : sphere) {
            sum += (support(a, u) - support(b, u)) * (support(a, v) - support(b, v)) * kern(u, v);
        }
    }
    return sum;
}

/// v^T K v with v = (du, -dl) and an explicit 2x2 matrix product.
inline double matrix_form_oracle(const Interval& a, const Interval& b, const Kernel2x2& k) {
    const double v[2] = {a.upper() - b.upper(), -(a.lower() - b.lower())};
    const double K[2][2] = {{k.k_pp, k.k_pm}, {k.k_pm, k.k_mm}};
    double Kv[2] = {0.0, 0.0};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) Kv[i] += K[i][j] * v[j];
    }
    return v[0] * Kv[0] + v[1] * Kv[1];
}

/// Naive recurrence plot: explicit trajectory index loops, distances from the
/// matrix-form oracle.
inline std::vector<std::vector<int>> naive_plot(const IntervalSeries& x, std::size_t m, std::size_t kappa,
                                                const Kernel2x2& k, double eps) {
    const std::size_t n = x.length() - (m - 1) * kappa;
    std::vector<std::vector<int>> p(n, std::vector<int>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            double sq = 0.0;
            for (std::size_t s = 0; s < m; ++s) sq += matrix_form_oracle(x[j + s * kappa], x[i + s * kappa], k);
            p[j][i] = std::sqrt(std::max(sq, 0.0)) <= eps ? 1 : 0;
        }
    }
    return p;
}

/// Point recurrence plot of a real sequence: |a_j - a_i| <= eps.
inline std::vector<std::vector<int>> point_plot(const std::vector<double>& a, double eps) {
    std::vector<std::vector<int>> p(a.size(), std::vector<int>(a.size(), 0));
    for (std::size_t j = 0; j < a.size(); ++j) {
        for (std::size_t i = 0; i < a.size(); ++i) p[j][i] = std::abs(a[j] - a[i]) <= eps ? 1 : 0;
    }
    return p;
}

inline bool same_pixels(const RecurrenceImage& img, const std::vector<std::vector<int>>& ref) {
    if (img.size() != ref.size()) return false;
    for (std::size_t j = 0; j < ref.size(); ++j) {
        for (std::size_t i = 0; i < ref.size(); ++i) {
            if (img(j, i) != ref[j][i]) return false;
        }
    }
    return true;
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& name) {
        path_ = std::filesystem::temp_directory_path() /
                (name + "_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

private:
    std::filesystem::path path_;
};

struct CommandResult {
    int status = -1;
    std::string output;
};

/// Runs a shell command, capturing stdout and stderr.
inline CommandResult run_command(const std::string& cmd) {
    CommandResult r;
    FILE* pipe = ::popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

} // namespace ivts::testing
