#include "ivts/theory.hpp"

#include <algorithm>
#include <cmath>

#include "ivts/errors.hpp"
#include "ivts/parallel.hpp"
#include "ivts/rng.hpp"

namespace ivts {

double lipschitz_constant(LossKind kind) noexcept {
    switch (kind) {
    case LossKind::hinge: return 1.0;
    case LossKind::squared_hinge: return 2.0;
    case LossKind::exponential: return 1.0;
    }
    return 1.0;
}

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidArgument(std::string(name) + " must be a positive finite number");
    }
}

} // namespace

GBounds g_bounds(double ell, double c_A, double c_Z, double c_B) {
    require_positive(ell, "ell");
    require_positive(c_A, "c_A");
    require_positive(c_Z, "c_Z");
    require_positive(c_B, "c_B");
    const double m = c_A * c_Z + c_B;
    return {2.0 * ell * m, 4.0 * ell * m};
}

void RiskBoundInputs::validate() const {
    require_positive(ell, "ell");
    require_positive(c_A, "c_A");
    require_positive(c_B, "c_B");
    require_positive(c_Z, "c_Z");
    require_positive(varrho, "varrho");
    if (n < 1) throw InvalidArgument("n must be >= 1");
    if (!(log_covering >= 0.0) || !std::isfinite(log_covering)) {
        throw InvalidArgument("log_covering must be a nonnegative finite number");
    }
}

double offset_rademacher_bound(const RiskBoundInputs& in) {
    in.validate();
    const double lm = in.ell * (in.c_A * in.c_Z + in.c_B);
    const double complexity = (1.0 + in.log_covering) / (2.0 * in.varrho * static_cast<double>(in.n));
    return complexity + 4.0 * lm * (1.0 + 4.0 * in.varrho * lm);
}

double excess_risk_varrho(double ell, double c_A, double c_B, double c_Z) {
    return 1.0 / g_bounds(ell, c_A, c_Z, c_B).pair;
}

double excess_risk_bound(double ell, double c_A, double c_B, double c_Z, std::size_t n,
                         double log_covering) {
    RiskBoundInputs in{ell, c_A, c_B, c_Z, n, log_covering, excess_risk_varrho(ell, c_A, c_B, c_Z)};
    return 4.0 * offset_rademacher_bound(in);
}

double heuristic_log_covering(std::size_t classes, std::size_t p, double c_A, double c_Z,
                              double delta) {
    require_positive(delta, "delta");
    return static_cast<double>(classes) * static_cast<double>(p + 1) *
           std::log1p(4.0 * c_A * c_Z / delta);
}

namespace {

double inner_sup(std::span<const Vector> z, std::span<const int> tau, const RademacherConfig& cfg) {
    const std::size_t n = z.size();
    const std::size_t p = z.front().size();
    const double inv_n = 1.0 / static_cast<double>(n);
    const double step = 1.0 / (2.0 * cfg.varrho + 1.0);

    std::vector<double> a(p, 0.0), grad_a(p);
    double b = 0.0;
    double best = 0.0; // f = 0 is feasible
    for (std::size_t it = 0; it <= cfg.inner_steps; ++it) {
        std::fill(grad_a.begin(), grad_a.end(), 0.0);
        double grad_b = 0.0;
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double f = b;
            for (std::size_t k = 0; k < p; ++k) f += a[k] * z[i][k];
            objective += tau[i] * f - cfg.varrho * f * f;
            const double w = tau[i] - 2.0 * cfg.varrho * f;
            for (std::size_t k = 0; k < p; ++k) grad_a[k] += w * z[i][k];
            grad_b += w;
        }
        best = std::max(best, objective * inv_n);
        if (it == cfg.inner_steps) break;

        double sq = 0.0;
        for (std::size_t k = 0; k < p; ++k) {
            a[k] += step * grad_a[k] * inv_n;
            sq += a[k] * a[k];
        }
        const double norm = std::sqrt(sq);
        if (norm > cfg.c_A) {
            for (auto& v : a) v = norm > 0.0 ? v * cfg.c_A / norm : 0.0;
        }
        b = std::clamp(b + step * grad_b * inv_n, -cfg.c_B, cfg.c_B);
    }
    return best;
}

} // namespace

RademacherEstimate empirical_offset_rademacher(std::span<const Vector> features,
                                               const RademacherConfig& cfg) {
    if (features.empty()) throw EmptyInput("need at least one feature vector");
    for (const auto& f : features) {
        if (f.size() != features.front().size()) throw DimensionMismatch("features differ in dimension");
    }
    if (!(cfg.c_A >= 0.0) || !(cfg.c_B >= 0.0)) throw InvalidArgument("caps must be nonnegative");
    require_positive(cfg.varrho, "varrho");
    if (cfg.mc_draws < 1) throw InvalidArgument("mc_draws must be >= 1");

    std::vector<double> draws(cfg.mc_draws);
    parallel_for(cfg.mc_draws, cfg.threads, [&](std::size_t d) {
        Rng rng(derive_seed(cfg.seed, d));
        std::vector<int> tau(features.size());
        for (auto& t : tau) t = rng.rademacher();
        draws[d] = inner_sup(features, tau, cfg);
    });

    double sum = 0.0;
    for (double v : draws) sum += v;
    return {sum / static_cast<double>(cfg.mc_draws), cfg.mc_draws, cfg.inner_steps};
}

} // namespace ivts
