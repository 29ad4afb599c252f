// metrology.hpp: quantum Fisher information of the acceleration

#pragma once

#include <Eigen/Core>
#include <complex>
#include <string_view>

#include "qfiunruh/dynamics.hpp"

namespace qfiunruh {

enum class QfiBranch { Mixed, Pure };

std::string_view to_string(QfiBranch branch);

struct QfiResult {
    double value{0.0};  // F_a, per unit dimensionless acceleration squared
    QfiBranch branch{QfiBranch::Mixed};
    double bloch_norm{0.0};
    bool near_singular{false};  // 1 - |w|^2 in (1e-12, 1e-9): mixed formula, poorly conditioned
};

/// Tolerance on |w| above one before a state is rejected, and the norm at
/// which the pure-state formula takes over.
inline constexpr double kPureTolerance = 1e-12;

/// F = |dw|^2 + (w.dw)^2 / (1 - |w|^2) for mixed states, |dw|^2 for pure ones.
/// Throws InvalidStateError when |w| > 1 + 1e-12.
QfiResult qfi_from_bloch(const BlochState& state);

/// QFI of the evolved state for an atom prepared with polar angle theta.
QfiResult qfi(double a, double tau, double theta, FieldModel field);

/// Same, for a full initial state and parameter set. The result does not
/// depend on phi or omega_ratio, bit for bit: the state is evaluated in the
/// frame co-rotating with the precession.
QfiResult qfi(const InitialState& init, const EvolutionParams& p);

/// Long-time limit (pi^2/a^4) sech^2(pi/a); the same for both field models.
/// Throws DomainError for a <= 0.
double asymptotic_qfi(double a, FieldModel field);

using Matrix2c = Eigen::Matrix2cd;

/// rho = (I + w.sigma)/2 in the basis {|+>, |->}.
Matrix2c density_matrix(const Eigen::Vector3d& omega);

/// Pauli matrices, index 0 is the identity.
Matrix2c pauli(int index);

struct SldOperator {
    Matrix2c L{Matrix2c::Zero()};
};

/// Symmetric logarithmic derivative: the Hermitian L with
/// d rho/da = (rho L + L rho)/2, obtained by solving the 4x4 real system for
/// the Pauli components of L. Requires |w| < 1 - 1e-10 (IllConditionedError otherwise).
SldOperator sld(const BlochState& state);

/// Tr(rho L) and Tr(rho L^2), real parts.
double trace_rho_l(const Matrix2c& rho, const Matrix2c& L);
double trace_rho_l2(const Matrix2c& rho, const Matrix2c& L);

/// QFI with d w/d a replaced by a central difference of `evolve` outputs with
/// step h*max(1, a). Falls back to a second-order one-sided stencil when a < h*max(1,a).
/// h must lie in [1e-7, 1e-3].
double qfi_fd_oracle(double a, double tau, double theta, FieldModel field, double h);

}  // namespace qfiunruh
