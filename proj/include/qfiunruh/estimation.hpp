// estimation.hpp: Monte Carlo check of the Cramer-Rao bound for the acceleration

#pragma once

#include <cstdint>

#include "qfiunruh/metrology.hpp"

namespace qfiunruh {

/// Two-outcome projective measurement in the eigenbasis of the SLD.
struct MeasurementPlan {
    Matrix2c plus{Matrix2c::Zero()};   // projector onto the larger SLD eigenvalue
    Matrix2c minus{Matrix2c::Zero()};
    std::uint64_t n_shots{0};
    std::uint64_t seed{0};

    /// Hermitian, idempotent and complete to 1e-12; throws ValidationError otherwise.
    void validate() const;
    /// Probability of the `plus` outcome in state rho.
    double probability(const Matrix2c& rho) const;
};

/// Builds the plan from the state (and its derivative) at the true acceleration.
MeasurementPlan make_measurement_plan(const BlochState& state, std::uint64_t n_shots, std::uint64_t seed);

struct EstimationReport {
    double a_true{0.0};
    double a_hat_mean{0.0};
    double a_hat_var{0.0};  // unbiased across-trial variance
    std::uint64_t n_shots{0};
    std::uint64_t n_trials{0};
    double qfi{0.0};
    double crb_product{0.0};  // n_shots * qfi * a_hat_var; >= 1 by Cramer-Rao
    std::uint64_t boundary_hits{0};  // trials whose MLE landed on the search boundary
    double search_lo{0.0};
    double search_hi{0.0};

    bool operator==(const EstimationReport&) const = default;
};

struct EstimationConfig {
    double a_true{1.0};
    double tau{4.0};
    double theta{0.0};
    FieldModel field{FieldModel::Electromagnetic};
    std::uint64_t n_shots{100'000};
    std::uint64_t n_trials{200};
    std::uint64_t seed{42};
    unsigned threads{1};  // 0 = hardware concurrency; results do not depend on it
};

/// Simulates n_trials independent experiments of n_shots measurements each and
/// estimates a by maximum likelihood.
///
/// Each trial draws its binomial count from a generator seeded with
/// (seed, trial index), so serial and parallel runs agree bit for bit. The
/// likelihood depends on a only through the outcome probability p(a), so the
/// search runs over the branch of [a_true/4, 4 a_true] on which p is monotone
/// around a_true. Throws PreconditionError if QFI <= 1e-6, n_shots < 1000 or
/// n_trials < 100.
EstimationReport simulate_estimation(const EstimationConfig& config);

}  // namespace qfiunruh
