// dynamics.hpp: Bloch-vector evolution of the accelerated two-level atom

#pragma once

#include <Eigen/Core>

#include "qfiunruh/spectral.hpp"

namespace qfiunruh {

/// |psi(0)> = cos(theta/2)|+> + e^{i phi} sin(theta/2)|->.
struct InitialState {
    double theta{0.0};  // polar angle, [0, pi]
    double phi{0.0};    // azimuth, [0, 2 pi)

    /// Throws ValidationError if an angle is out of range or not finite.
    void validate() const;
    Eigen::Vector3d bloch_vector() const;
};

struct EvolutionParams {
    double tau{0.0};  // proper time in units of 1/gamma0
    double a{0.0};    // dimensionless acceleration
    FieldModel field{FieldModel::Electromagnetic};
    double omega_ratio{100.0};  // Omega/gamma0; sets the precession only

    void validate() const;
};

struct BlochState {
    Eigen::Vector3d omega{Eigen::Vector3d::Zero()};
    Eigen::Vector3d d_omega{Eigen::Vector3d::Zero()};  // d omega / d a
};

enum class Frame {
    Lab,        // transverse components precess with Omega tau + phi
    Corotating  // precession phase removed; omega_2 = 0
};

/// Closed-form Bloch vector and its acceleration derivative.
///
/// The renormalized frequency Omega is treated as independent of a, so the
/// transverse derivative only picks up the decay term. The rotation about z
/// is a-independent, which is why the corotating frame gives the same QFI.
BlochState evolve(const InitialState& init, const EvolutionParams& p, Frame frame = Frame::Lab);

/// Integrates the Bloch equations
///   dw1/dt = -2A w1 - Omega w2,  dw2/dt = -2A w2 + Omega w1,  dw3/dt = -4A w3 - 4B
/// with an adaptive embedded Runge-Kutta 7(8) scheme. Only `omega` is filled.
/// rtol must lie in [1e-12, 1e-6]; throws IntegrationError if the step size underflows.
BlochState bloch_ode_oracle(const InitialState& init, const EvolutionParams& p, double rtol);

}  // namespace qfiunruh
