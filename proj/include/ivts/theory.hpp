#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ivts/classify.hpp"

namespace ivts {

/// Lipschitz constants as stated for the auxiliary losses: hinge 1,
/// squared hinge 2, exponential 1. The last two only hold on a bounded
/// argument range; they are reported verbatim.
double lipschitz_constant(LossKind kind) noexcept;

struct GBounds {
    double single; ///< 2 l (c_A c_Z + c_B)
    double pair;   ///< 4 l (c_A c_Z + c_B)
};

GBounds g_bounds(double ell, double c_A, double c_Z, double c_B);

struct RiskBoundInputs {
    double ell = 1.0;
    double c_A = 1.0;
    double c_B = 1.0;
    double c_Z = 1.0;
    std::size_t n = 1;
    double log_covering = 0.0; ///< log E N_inf(delta, F, S_n), user supplied
    double varrho = 1.0;

    void validate() const;
};

/// (1 + log_covering) / (2 varrho n) + 4 l M (1 + 4 varrho l M), M = c_A c_Z + c_B.
double offset_rademacher_bound(const RiskBoundInputs& in);

/// The offset parameter 1 / (4 l (c_A c_Z + c_B)) used by the excess-risk bound.
double excess_risk_varrho(double ell, double c_A, double c_B, double c_Z);

/// 4 * offset_rademacher_bound at varrho = excess_risk_varrho(...).
double excess_risk_bound(double ell, double c_A, double c_B, double c_Z, std::size_t n,
                         double log_covering);

/// Not derived from the theory: parametric covering heuristic
/// C (p + 1) log(1 + 4 c_A c_Z / delta) for a C-class linear model in R^p.
double heuristic_log_covering(std::size_t classes, std::size_t p, double c_A, double c_Z,
                              double delta);

struct RademacherEstimate {
    double value;
    std::size_t mc_draws;
    std::size_t inner_steps;
};

struct RademacherConfig {
    double c_A = 1.0;
    double c_B = 1.0;
    double varrho = 1.0;
    std::size_t mc_draws = 256;
    std::size_t inner_steps = 200;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// Monte-Carlo estimate of E sup_f (1/n) sum tau_i f(z_i) - varrho f(z_i)^2
/// over f(z) = a^T z + b, |a| <= c_A, |b| <= c_B. The inner sup is
/// approximated by projected gradient ascent started at f = 0 (step
/// 1 / (2 varrho + 1)); the best objective seen is kept, so every draw
/// contributes a value >= 0.
RademacherEstimate empirical_offset_rademacher(std::span<const Vector> features,
                                               const RademacherConfig& cfg);

} // namespace ivts
