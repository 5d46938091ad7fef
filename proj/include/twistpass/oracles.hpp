#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

// Closed-form transition probabilities used as ground truth for the
// numerical engine.

namespace twistpass {

// Landau-Zener probability for twistless passage, exp(-pi/lambda).
inline double landau_zener(double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("landau_zener: lambda must be positive");
    return std::exp(-std::numbers::pi / lambda);
}

// Exact result for quadratic twist, exp(-pi / (lambda |1 - eta2|)).
// eta2 = 1 is the complete quench and returns exactly 0 (the limit is
// physical, not a division error).
inline double quadratic_exact(double lambda, double eta2) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("quadratic_exact: lambda must be positive");
    const double denom = std::abs(1.0 - eta2);
    if (denom == 0.0) return 0.0;
    return std::exp(-std::numbers::pi / (lambda * denom));
}

// Geometric exponent Gamma_g = -pi eta2 / lambda. In the adiabatic limit
// quadratic_exact factorizes as landau_zener * exp(geometric_exponent).
inline double geometric_exponent(double lambda, double eta2) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("geometric_exponent: lambda must be positive");
    return -std::numbers::pi * eta2 / lambda;
}

} // namespace twistpass
