// dynamics.cpp

#include "qfiunruh/dynamics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "qfiunruh/errors.hpp"

namespace qfiunruh {

namespace odeint = boost::numeric::odeint;
using std::numbers::pi;

namespace {

// sin(theta) on [0, pi], exactly zero at both poles.
double polar_sin(double theta) {
    return std::sin(theta > 0.5 * pi ? pi - theta : theta);
}

}  // namespace

void InitialState::validate() const {
    if (!std::isfinite(theta) || theta < 0.0 || theta > pi) {
        throw ValidationError("theta must lie in [0, pi], got " + std::to_string(theta));
    }
    if (!std::isfinite(phi) || phi < 0.0 || phi >= 2.0 * pi) {
        throw ValidationError("phi must lie in [0, 2 pi), got " + std::to_string(phi));
    }
}

Eigen::Vector3d InitialState::bloch_vector() const {
    const double s = polar_sin(theta);
    return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

void EvolutionParams::validate() const {
    if (!std::isfinite(tau) || tau < 0.0) {
        throw ValidationError("tau must be finite and >= 0, got " + std::to_string(tau));
    }
    check_acceleration(a);
    if (!std::isfinite(omega_ratio) || omega_ratio <= 0.0) {
        throw ValidationError("omega_ratio must be finite and > 0");
    }
}

BlochState evolve(const InitialState& init, const EvolutionParams& p, Frame frame) {
    init.validate();
    p.validate();

    const Coefficients k = coefficients(p.a, p.field);
    const double tau = p.tau;
    const double decay2 = std::exp(-2.0 * k.A * tau);
    const double decay4 = std::exp(-4.0 * k.A * tau);
    // 1 - e^{-4 A tau}, accurate for small tau
    const double relaxed = -std::expm1(-4.0 * k.A * tau);
    const double ratio = k.B / k.A;
    const double d_ratio = ratio_derivative(p.a);

    const double phase = frame == Frame::Lab ? p.omega_ratio * tau + init.phi : 0.0;
    const double transverse = polar_sin(init.theta) * decay2;
    const double cos_theta = std::cos(init.theta);

    BlochState s;
    s.omega = {transverse * std::cos(phase), transverse * std::sin(phase),
               cos_theta * decay4 - ratio * relaxed};

    s.d_omega.x() = -2.0 * tau * k.dA * s.omega.x();
    s.d_omega.y() = -2.0 * tau * k.dA * s.omega.y();
    s.d_omega.z() = -4.0 * tau * k.dA * decay4 * cos_theta - d_ratio * relaxed
                    - ratio * 4.0 * tau * k.dA * decay4;
    return s;
}

BlochState bloch_ode_oracle(const InitialState& init, const EvolutionParams& p, double rtol) {
    init.validate();
    p.validate();
    if (!(rtol >= 1e-12 && rtol <= 1e-6)) {
        throw ValidationError("bloch_ode_oracle: rtol must lie in [1e-12, 1e-6]");
    }

    using State = std::array<double, 3>;
    const Coefficients k = coefficients(p.a, p.field);
    const double omega = p.omega_ratio;

    auto rhs = [&](const State& w, State& dw, double /*t*/) {
        dw[0] = -2.0 * k.A * w[0] - omega * w[1];
        dw[1] = -2.0 * k.A * w[1] + omega * w[0];
        dw[2] = -4.0 * k.A * w[2] - 4.0 * k.B;
    };

    const Eigen::Vector3d w0 = init.bloch_vector();
    State w{w0.x(), w0.y(), w0.z()};

    auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(1e-2 * rtol, rtol);

    const double t_end = p.tau;
    const double dt_min = 1e-14 * std::max(1.0, t_end);
    constexpr long max_steps = 50'000'000;
    double t = 0.0;
    double dt = std::min(1e-3, t_end);
    long steps = 0;
    while (t < t_end) {
        if (t + dt > t_end) dt = t_end - t;
        if (stepper.try_step(rhs, w, t, dt) == odeint::fail) {
            if (dt < dt_min) {
                throw IntegrationError("bloch_ode_oracle: step size underflow at t = " + std::to_string(t));
            }
            continue;
        }
        if (!std::isfinite(w[0]) || !std::isfinite(w[1]) || !std::isfinite(w[2])) {
            throw IntegrationError("bloch_ode_oracle: state diverged at t = " + std::to_string(t));
        }
        if (++steps > max_steps) throw IntegrationError("bloch_ode_oracle: step budget exhausted");
    }

    BlochState s;
    s.omega = {w[0], w[1], w[2]};
    return s;
}

}  // namespace qfiunruh
