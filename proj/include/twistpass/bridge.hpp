#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "twistpass/model.hpp"

// Translation between the dimensionless pulse parameters and the
// spectrometer-convention parameters (A, B, omega1, T) of a frequency-swept
// NMR experiment, plus the two-qubit level structure used to drive a CNOT
// by sweeping through one resonance line.
//
// Two twist-strength conventions coexist: the theory strength curly-B in
// phi_n(t) = (2/n) curly-B t^n, and the experimental strength
// B = (2 curly-B / n) T^n. All public interfaces here carry the
// experimental B; the conversion is applied internally.

namespace twistpass {

struct experiment_params {
    double A = 0.0;      // detector sweep amplitude (Hz)
    double B_exp = 0.0;  // twist strength, experimental convention (radians)
    double omega1 = 0.0; // rf amplitude (Hz)
    double T = 0.0;      // pulse duration (s)
    int n = 4;           // twist order

    void validate() const {
        if (!(omega1 > 0.0))
            throw std::invalid_argument("experiment_params: omega1 must be positive");
        if (!(T > 0.0))
            throw std::invalid_argument("experiment_params: T must be positive");
    }
};

// lambda = 4|A| / (omega1^2 T); eta3 = (3/4) B omega1 / (A^2 T);
// eta4 = B omega1^2 / (2 A^3 T).
inline pulse_params to_dimensionless(const experiment_params& e) {
    e.validate();
    const double lambda = 4.0 * std::abs(e.A) / (e.omega1 * e.omega1 * e.T);
    double eta = 0.0;
    switch (e.n) {
    case 3:
        eta = 0.75 * e.B_exp * e.omega1 / (e.A * e.A * e.T);
        break;
    case 4:
        eta = 0.5 * e.B_exp * e.omega1 * e.omega1 / (e.A * e.A * e.A * e.T);
        break;
    default:
        throw std::invalid_argument(
            "to_dimensionless: eta conversion only supported for n in {3, 4}");
    }
    return pulse_params{lambda, eta, e.n};
}

// Duration of a rapid-passage inversion, T = 4 / (f omega1 lambda), where
// f = omega1/|A| sets how far from resonance the sweep begins.
inline double inversion_time(double f, double omega1, double lambda) {
    if (!(f > 0.0) || !(omega1 > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("inversion_time: all inputs must be positive");
    return 4.0 / (f * omega1 * lambda);
}

// Duration of a resonant pi-pulse with rf amplitude omega1.
inline double pi_pulse_time(double omega1) {
    if (!(omega1 > 0.0))
        throw std::invalid_argument("pi_pulse_time: omega1 must be positive");
    return std::numbers::pi / omega1;
}

// Inverse of to_dimensionless at a chosen rf amplitude and sweep-asymmetry
// ratio f = omega1/|A|. f must stay small so the sweep begins far from
// resonance; f > 0.2 is rejected.
inline experiment_params from_dimensionless(const pulse_params& p, double omega1,
                                            double f = 0.1) {
    p.validate();
    if (!(omega1 > 0.0))
        throw std::invalid_argument("from_dimensionless: omega1 must be positive");
    if (!(f > 0.0))
        throw std::invalid_argument("from_dimensionless: f must be positive");
    if (f > 0.2)
        throw std::invalid_argument(
            "from_dimensionless: sweep window too narrow (need f = omega1/|A| <= 0.2)");

    experiment_params e;
    e.omega1 = omega1;
    e.n = p.n;
    e.A = omega1 / f;
    e.T = inversion_time(f, omega1, p.lambda);
    switch (p.n) {
    case 3:
        e.B_exp = p.eta * e.A * e.A * e.T / (0.75 * omega1);
        break;
    case 4:
        e.B_exp = 2.0 * p.eta * e.A * e.A * e.A * e.T / (omega1 * omega1);
        break;
    default:
        throw std::invalid_argument(
            "from_dimensionless: B conversion only supported for n in {3, 4}");
    }
    return e;
}

// Lab time (seconds, relative to pulse center) of a dimensionless instant:
// t = (b/a) tau with b/a = omega1 T / (2A).
inline double lab_time(const experiment_params& e, double tau) {
    e.validate();
    return tau * e.omega1 * e.T / (2.0 * e.A);
}

// Detuning of the rf sweep from the Larmor frequency,
// phi_dot_rf(t) - omega0 = 2A(t/T) - (nB/T)(t/T)^(n-1). Its zeros are the
// avoided crossings, which is how the spectrometer sweep realizes the
// crossing condition.
inline double rf_sweep_detuning(const experiment_params& e, double t) {
    e.validate();
    const double x = t / e.T;
    return 2.0 * e.A * x - (e.n * e.B_exp / e.T) * ipow(x, e.n - 1);
}

// Two-qubit Ising level structure for a CNOT driven by rapid passage:
// H/hbar = -omega_c Iz_c - omega_t Iz_t + 2 pi J Iz_c Iz_t.
// The target-spin lines sit at omega_pm = omega_t +- pi J; sweeping through
// omega_plus flips the target only when the control is |1>.
struct cnot_levels {
    double omega_c = 0.0;
    double omega_t = 0.0;
    double coupling_j = 0.0;
    // energies (frequency units) of |00>, |01>, |10>, |11>, indexed by the
    // two-bit label (control bit high)
    std::array<double, 4> level_frequencies{};
    double omega_plus = 0.0;  // |10> <-> |11> transition
    double omega_minus = 0.0; // |00> <-> |01> transition

    double level(int control, int target) const {
        return level_frequencies[2 * control + target];
    }
};

inline cnot_levels cnot_level_structure(double omega_c, double omega_t, double j) {
    const double pij = std::numbers::pi * j;
    if (!(omega_c > omega_t) || !(omega_t > pij) || !(pij > 0.0))
        throw std::invalid_argument(
            "cnot_level_structure: need omega_c > omega_t > pi*J > 0");

    cnot_levels lv;
    lv.omega_c = omega_c;
    lv.omega_t = omega_t;
    lv.coupling_j = j;
    // |0> = spin up (Iz = +1/2), |1> = spin down (Iz = -1/2)
    for (int c = 0; c < 2; ++c) {
        for (int t = 0; t < 2; ++t) {
            const double sc = c == 0 ? 0.5 : -0.5;
            const double st = t == 0 ? 0.5 : -0.5;
            lv.level_frequencies[2 * c + t] =
                -omega_c * sc - omega_t * st + 2.0 * pij * sc * st;
        }
    }
    lv.omega_plus = omega_t + pij;
    lv.omega_minus = omega_t - pij;
    return lv;
}

} // namespace twistpass
