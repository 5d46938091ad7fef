#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

// Dimensionless model of twisted rapid passage for a two-level system.
//
// A qubit is Zeeman-coupled to an external field that inverts at rate a
// while its transverse component (magnitude b) twists azimuthally with
// polynomial angle phi_n(t) = (2/n) B t^n. Everything here is reduced to
// internal units hbar = 1, b = 1, so the dynamics depend only on
//
//   lambda = hbar a / b^2          (inversion rate; lambda > 1 is non-adiabatic)
//   eta_n  = hbar B b^(n-2)/a^(n-1) (twist strength)
//   tau    = (a/b) t               (dimensionless time)
//
// Angles are radians; rates are per unit tau.

namespace twistpass {

// Dimensionful field parameters as they appear in the lab Hamiltonian
// H(t) = sigma . F(t). Only the bridge module works with these directly.
struct lab_field_params {
    double a = 1.0;              // field inversion rate (energy/time)
    double b = 1.0;              // transverse field amplitude (energy)
    double twist_strength = 0.0; // B in phi_n(t) = (2/n) B t^n (radians/time^n)
    int n = 2;                   // twist order
    double hbar = 1.0;

    void validate() const {
        if (!(a > 0.0) || !(b > 0.0))
            throw std::invalid_argument("lab_field_params: a and b must be positive");
        if (n < 2)
            throw std::invalid_argument("lab_field_params: twist order n must be >= 2");
        if (!(hbar > 0.0))
            throw std::invalid_argument("lab_field_params: hbar must be positive");
    }
};

// Dimensionless description of one rapid-passage pulse.
struct pulse_params {
    double lambda = 1.0; // hbar a / b^2, > 0
    double eta = 0.0;    // hbar B b^(n-2) / a^(n-1), any sign; for n = 2 this is hbar B / a
    int n = 2;           // twist order, integer >= 2

    void validate() const {
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("pulse_params: lambda must be positive and finite");
        if (!std::isfinite(eta))
            throw std::invalid_argument("pulse_params: eta must be finite");
        if (n < 2)
            throw std::invalid_argument("pulse_params: twist order n must be >= 2");
    }
};

inline pulse_params to_pulse_params(const lab_field_params& lab) {
    lab.validate();
    const double lambda = lab.hbar * lab.a / (lab.b * lab.b);
    const double eta = lab.hbar * lab.twist_strength * std::pow(lab.b, lab.n - 2) /
                       std::pow(lab.a, lab.n - 1);
    return pulse_params{lambda, eta, lab.n};
}

// x^k with exact integer-exponent semantics (negative bases stay real).
inline double ipow(double x, int k) {
    double r = 1.0;
    double base = x;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

// phi_n(tau) = (2/n) (eta/lambda) tau^n. Odd n gives an odd function of tau.
inline double twist_angle(double tau, const pulse_params& p) {
    return (2.0 / p.n) * (p.eta / p.lambda) * ipow(tau, p.n);
}

// d phi_n / d tau = (2 eta / lambda) tau^(n-1). At any avoided crossing
// tau* != 0 this equals 2 tau* / lambda.
inline double twist_rate(double tau, const pulse_params& p) {
    return 2.0 * (p.eta / p.lambda) * ipow(tau, p.n - 1);
}

// Instantaneous eigensystem of the lab Hamiltonian at tau, in units of b.
// theta is never materialized; cos/sin are computed directly from tau.
struct eigen_frame {
    double tau = 0.0;
    double energy = 1.0;    // E(tau)/b = sqrt(1 + tau^2)
    double cos_theta = 0.0; // tau / sqrt(1 + tau^2)
    double sin_theta = 1.0; // 1 / sqrt(1 + tau^2)
    double phi = 0.0;       // twist angle at tau
    double phi_dot = 0.0;   // twist rate at tau
};

inline eigen_frame eigen_frame_at(double tau, const pulse_params& p) {
    eigen_frame f;
    f.tau = tau;
    f.energy = std::sqrt(1.0 + tau * tau);
    f.cos_theta = tau / f.energy;
    f.sin_theta = 1.0 / f.energy;
    f.phi = twist_angle(tau, p);
    f.phi_dot = twist_rate(tau, p);
    return f;
}

// Geometric-phase accumulation rates of the upper/lower instantaneous
// levels: d gamma_pm / d tau = -(phi_dot/2)(1 -+ cos theta). Both vanish
// identically for eta = 0 and at tau = 0.
struct gamma_rates {
    double plus = 0.0;
    double minus = 0.0;
};

inline gamma_rates gamma_dot_pm(double tau, const pulse_params& p) {
    const double rate = twist_rate(tau, p);
    const double cos_theta = tau / std::sqrt(1.0 + tau * tau);
    return gamma_rates{-0.5 * rate * (1.0 - cos_theta), -0.5 * rate * (1.0 + cos_theta)};
}

// Inter-level coupling Gamma_bar(tau) = (dtheta/dtau)/2 - i (phi_dot/2) sin theta.
// The real part -1/(2(1+tau^2)) is the twistless coupling; the imaginary
// part carries all twist dependence. Decays like 1/tau^2, which makes the
// asymptotic transition probability converge.
inline std::complex<double> coupling(double tau, const pulse_params& p) {
    const double e = std::sqrt(1.0 + tau * tau);
    return {-0.5 / (1.0 + tau * tau), -0.5 * twist_rate(tau, p) / e};
}

// Detuning delta_bar(tau) = (2/lambda) E(tau) - phi_dot cos theta. This is
// the level splitting minus the geometric-rate difference; its integral is
// the phase that drives the interference between avoided crossings.
inline double detuning(double tau, const pulse_params& p) {
    const double e = std::sqrt(1.0 + tau * tau);
    return (2.0 / p.lambda) * e - twist_rate(tau, p) * tau / e;
}

} // namespace twistpass
