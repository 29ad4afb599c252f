// metrology.cpp

#include "qfiunruh/metrology.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <string>

#include "qfiunruh/errors.hpp"

namespace qfiunruh {

using std::numbers::pi;

std::string_view to_string(QfiBranch branch) {
    return branch == QfiBranch::Pure ? "pure" : "mixed";
}

QfiResult qfi_from_bloch(const BlochState& state) {
    const Eigen::Vector3d& w = state.omega;
    const Eigen::Vector3d& dw = state.d_omega;
    if (!w.allFinite() || !dw.allFinite()) throw InvalidStateError("non-finite Bloch data");

    const double norm2 = w.squaredNorm();
    const double norm = std::sqrt(norm2);
    if (norm > 1.0 + kPureTolerance) {
        throw InvalidStateError("Bloch vector norm " + std::to_string(norm) + " exceeds 1");
    }

    QfiResult r;
    r.bloch_norm = norm;
    const double grad2 = dw.squaredNorm();
    if (norm >= 1.0 - kPureTolerance) {
        r.branch = QfiBranch::Pure;
        r.value = grad2;
        return r;
    }

    const double purity_gap = 1.0 - norm2;
    const double overlap = w.dot(dw);
    r.branch = QfiBranch::Mixed;
    r.near_singular = purity_gap < 1e-9 && overlap != 0.0;
    r.value = grad2 + overlap * overlap / purity_gap;
    return r;
}

QfiResult qfi(const InitialState& init, const EvolutionParams& p) {
    return qfi_from_bloch(evolve(init, p, Frame::Corotating));
}

QfiResult qfi(double a, double tau, double theta, FieldModel field) {
    return qfi(InitialState{theta, 0.0}, EvolutionParams{tau, a, field});
}

double asymptotic_qfi(double a, FieldModel /*field*/) {
    if (!std::isfinite(a) || a <= 0.0) {
        throw DomainError("asymptotic_qfi: a must be finite and > 0");
    }
    const double x = pi / a;
    const double scale = x / a;  // pi/a^2
    return scale * scale * stable::sech2(x);
}

Matrix2c pauli(int index) {
    using C = std::complex<double>;
    const C i{0.0, 1.0};
    Matrix2c m;
    switch (index) {
        case 0: m << 1.0, 0.0, 0.0, 1.0; break;
        case 1: m << 0.0, 1.0, 1.0, 0.0; break;
        case 2: m << 0.0, -i, i, 0.0; break;
        case 3: m << 1.0, 0.0, 0.0, -1.0; break;
        default: throw DomainError("pauli index out of range");
    }
    return m;
}

Matrix2c density_matrix(const Eigen::Vector3d& omega) {
    Matrix2c rho = pauli(0);
    for (int k = 0; k < 3; ++k) rho += omega[k] * pauli(k + 1);
    return 0.5 * rho;
}

SldOperator sld(const BlochState& state) {
    const double norm = state.omega.norm();
    if (!(norm < 1.0 - 1e-10)) {
        throw IllConditionedError("sld: state too close to pure (|w| = " + std::to_string(norm) + ")");
    }

    const Matrix2c rho = density_matrix(state.omega);
    Matrix2c d_rho = Matrix2c::Zero();
    for (int k = 0; k < 3; ++k) d_rho += 0.5 * state.d_omega[k] * pauli(k + 1);

    // Pauli component k of a Hermitian X is Tr(sigma_k X)/2.
    Eigen::Matrix4d system;
    Eigen::Vector4d rhs;
    for (int k = 0; k < 4; ++k) {
        const Matrix2c sk = pauli(k);
        rhs[k] = 0.5 * (sk * d_rho).trace().real();
        for (int j = 0; j < 4; ++j) {
            const Matrix2c sj = pauli(j);
            const Matrix2c anti = 0.5 * (rho * sj + sj * rho);
            system(k, j) = 0.5 * (sk * anti).trace().real();
        }
    }

    const Eigen::Vector4d x = system.fullPivLu().solve(rhs);
    SldOperator out;
    for (int j = 0; j < 4; ++j) out.L += x[j] * pauli(j);
    return out;
}

double trace_rho_l(const Matrix2c& rho, const Matrix2c& L) {
    return (rho * L).trace().real();
}

double trace_rho_l2(const Matrix2c& rho, const Matrix2c& L) {
    return (rho * L * L).trace().real();
}

double qfi_fd_oracle(double a, double tau, double theta, FieldModel field, double h) {
    if (!(h >= 1e-7 && h <= 1e-3)) throw ValidationError("qfi_fd_oracle: h must lie in [1e-7, 1e-3]");
    check_acceleration(a);

    const InitialState init{theta, 0.0};
    auto omega_at = [&](double x) {
        return evolve(init, EvolutionParams{tau, x, field}, Frame::Corotating).omega;
    };

    const double step = h * std::max(1.0, a);
    BlochState s;
    s.omega = omega_at(a);
    if (a >= step) {
        s.d_omega = (omega_at(a + step) - omega_at(a - step)) / (2.0 * step);
    } else {
        s.d_omega = (-3.0 * s.omega + 4.0 * omega_at(a + step) - omega_at(a + 2.0 * step)) / (2.0 * step);
    }
    return qfi_from_bloch(s).value;
}

}  // namespace qfiunruh
