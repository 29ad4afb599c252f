// spectral.hpp: bath spectral functions and Kossakowski coefficients
//
// Everything is dimensionless: rates in units of the spontaneous emission
// rate gamma0, accelerations in units of c*omega0, frequencies in omega0.

#pragma once

#include <string_view>

namespace qfiunruh {

enum class FieldModel { Electromagnetic, Scalar };

std::string_view to_string(FieldModel field);
/// Accepts "em" / "scalar" (also the long names). Throws ValidationError otherwise.
FieldModel parse_field_model(std::string_view name);

/// Kossakowski coefficients A, B in units of gamma0 together with dA/da, dB/da.
struct Coefficients {
    double A{0.25};
    double B{0.25};
    double dA{0.0};
    double dB{0.0};
};

namespace stable {

// Hyperbolic functions of x > 0 built from e^{-2x}; none of them overflow.
// At x = +inf they return the limit values.
double coth(double x);
double tanh(double x);
double csch2(double x);
double sech2(double x);

}  // namespace stable

/// Throws DomainError unless a is finite and non-negative.
void check_acceleration(double a);

/// A = (1+a^2)/4 coth(pi/a), B = (1+a^2)/4 for the EM bath; the scalar bath
/// drops the (1+a^2) factor. a = 0 returns the exact limit A = B = 1/4.
Coefficients coefficients(double a, FieldModel field);

/// G(lambda)/gamma0 along the accelerated world line.
///
/// Normalized so that A = [G(1)+G(-1)]/4 and B = [G(1)-G(-1)]/4.
/// lambda = 0 is a domain error (pole of coth for a > 0).
double spectral_function(double lambda, double a, FieldModel field);

/// d/da of B/A = tanh(pi/a); identical for both field models.
double ratio_derivative(double a);

}  // namespace qfiunruh
