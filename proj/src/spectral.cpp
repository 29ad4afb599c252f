// spectral.cpp

#include "qfiunruh/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qfiunruh/errors.hpp"

namespace qfiunruh {

using std::numbers::pi;

std::string_view to_string(FieldModel field) {
    return field == FieldModel::Electromagnetic ? "em" : "scalar";
}

FieldModel parse_field_model(std::string_view name) {
    if (name == "em" || name == "electromagnetic") return FieldModel::Electromagnetic;
    if (name == "scalar") return FieldModel::Scalar;
    throw ValidationError("unknown field model '" + std::string(name) + "' (expected em|scalar)");
}

namespace stable {

// With q = e^{-2x} and d = 1 - q computed through expm1:
//   coth = (1+q)/d, tanh = d/(1+q), csch^2 = 4q/d^2, sech^2 = 4q/(1+q)^2.

double coth(double x) {
    const double q = std::exp(-2.0 * x);
    return (1.0 + q) / -std::expm1(-2.0 * x);
}

double tanh(double x) {
    const double q = std::exp(-2.0 * x);
    return -std::expm1(-2.0 * x) / (1.0 + q);
}

double csch2(double x) {
    const double q = std::exp(-2.0 * x);
    const double d = -std::expm1(-2.0 * x);
    return 4.0 * q / (d * d);
}

double sech2(double x) {
    const double q = std::exp(-2.0 * x);
    return 4.0 * q / ((1.0 + q) * (1.0 + q));
}

}  // namespace stable

void check_acceleration(double a) {
    if (!std::isfinite(a) || a < 0.0) {
        throw DomainError("acceleration must be finite and >= 0, got " + std::to_string(a));
    }
}

Coefficients coefficients(double a, FieldModel field) {
    check_acceleration(a);
    if (a == 0.0) return Coefficients{0.25, 0.25, 0.0, 0.0};

    const double x = pi / a;
    const double c = stable::coth(x);
    // (pi/a^2) csch^2(pi/a), arranged so that a tiny a gives 0 instead of inf*0.
    const double dcoth = x * stable::csch2(x) / a;

    if (field == FieldModel::Electromagnetic) {
        const double f = 1.0 + a * a;
        return Coefficients{
            0.25 * f * c,
            0.25 * f,
            0.5 * a * c + 0.25 * f * dcoth,
            0.5 * a,
        };
    }
    return Coefficients{0.25 * c, 0.25, 0.25 * dcoth, 0.0};
}

double ratio_derivative(double a) {
    check_acceleration(a);
    if (a == 0.0) return 0.0;
    const double x = pi / a;
    return -x * stable::sech2(x) / a;
}

namespace {

// 1 + coth(y) without overflow for either sign of y.
double one_plus_coth(double y) {
    if (y > 0.0) return 2.0 / -std::expm1(-2.0 * y);
    const double q = std::exp(2.0 * y);
    return -2.0 * q / -std::expm1(2.0 * y);
}

}  // namespace

double spectral_function(double lambda, double a, FieldModel field) {
    if (!std::isfinite(lambda)) throw DomainError("spectral_function: lambda must be finite");
    check_acceleration(a);
    if (lambda == 0.0) throw DomainError("spectral_function: lambda = 0 is a pole");

    // a = 0: the Boltzmann factor vanishes, 1 + coth -> 2 (lambda > 0) or 0 (lambda < 0).
    const double thermal = a == 0.0 ? (lambda > 0.0 ? 2.0 : 0.0) : one_plus_coth(pi * lambda / a);

    if (field == FieldModel::Electromagnetic) {
        return 0.5 * lambda * (lambda * lambda + a * a) * thermal;
    }
    return 0.5 * lambda * thermal;
}

}  // namespace qfiunruh
