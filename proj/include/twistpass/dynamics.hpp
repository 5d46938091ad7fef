#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "twistpass/crossings.hpp"
#include "twistpass/model.hpp"
#include "twistpass/rk4.hpp"

// Integration of the adiabatic-representation amplitude equations
//
//   dS/dtau = -conj(Gamma_bar) e^{-i Phi} I
//   dI/dtau = +Gamma_bar       e^{+i Phi} S
//   dPhi/dtau = delta_bar
//
// over tau in [-tau0/2, +tau0/2] from (S, I, Phi) = (1, 0, 0). The
// accumulated phase Phi is carried as an extra ODE component so that phase
// and amplitudes stay consistent across adaptive steps. P(tau) = |I|^2 is
// the transition probability; its asymptote is read off by averaging the
// residual oscillation over the tail of the window.
//
// lab_frame_oracle computes the same probability by integrating the
// Schrodinger equation in the fixed spinor basis and projecting onto the
// instantaneous upper level, with no adiabatic-representation transform.
// The two routes must agree; they share only the generic RK4 driver.

namespace twistpass {

struct amplitude_state {
    std::complex<double> S{1.0, 0.0}; // lower instantaneous level
    std::complex<double> I{0.0, 0.0}; // upper instantaneous level
    double phase = 0.0;               // Phi(tau) = integral of delta_bar from -tau0/2

    double norm2() const { return std::norm(S) + std::norm(I); }
};

// Right-hand side of the equations of motion; returns (dS, dI, dPhi).
struct amplitude_derivative {
    std::complex<double> dS;
    std::complex<double> dI;
    double dphase;
};

inline amplitude_derivative amplitude_rhs(double tau, const amplitude_state& s,
                                          const pulse_params& p) {
    const std::complex<double> g = coupling(tau, p);
    const std::complex<double> rot = std::polar(1.0, s.phase);
    return amplitude_derivative{-std::conj(g * rot) * s.I, g * rot * s.S, detuning(tau, p)};
}

struct trajectory_sample {
    double tau;
    std::complex<double> S;
    std::complex<double> I;
    double p; // |I|^2
};

struct trajectory {
    std::vector<trajectory_sample> samples;
    std::int64_t steps_taken = 0;
    std::int64_t rejected_steps = 0;
    double max_norm_drift = 0.0; // max over accepted steps of ||S|^2+|I|^2 - 1|
    double tau0 = 0.0;           // window actually integrated

    double final_p() const { return samples.empty() ? 0.0 : samples.back().p; }
};

// Automatic window rule: tau0/2 = max(40, 2.5 * farthest predicted crossing),
// so the sweep starts far from resonance and every crossing sits well inside
// the window.
inline double auto_half_window(const pulse_params& p) {
    const crossing_set xs = predict_crossings(p);
    double far = 0.0;
    for (double x : xs.locations) far = std::max(far, std::abs(x));
    return std::max(40.0, 2.5 * far);
}

inline integrator_config resolve_window(const pulse_params& p, integrator_config cfg) {
    if (cfg.tau0 == 0.0) cfg.tau0 = 2.0 * auto_half_window(p);
    cfg.validate();
    if (!(cfg.tau0 > 0.0))
        throw std::invalid_argument("integrator_config: tau0 must be positive");
    return cfg;
}

// The asymptotic average is taken over 10 evenly spaced times in the final
// 15% of the window.
inline std::vector<double> averaging_times(double tau0, int count = 10,
                                           double tail_fraction = 0.15) {
    const double t_end = 0.5 * tau0;
    const double t_begin = t_end - tail_fraction * tau0;
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k)
        out[k] = t_begin + (t_end - t_begin) * k / (count - 1);
    return out;
}

namespace detail {

struct adiabatic_run {
    trajectory traj;
    std::vector<double> tail_p; // P at the averaging checkpoints
};

inline adiabatic_run integrate_adiabatic(const pulse_params& p, const integrator_config& cfg_in,
                                         bool record_samples) {
    p.validate();
    const integrator_config cfg = resolve_window(p, cfg_in);
    const double half = 0.5 * cfg.tau0;
    const std::vector<double> checkpoints =
        averaging_times(cfg.tau0, cfg.tail_samples, cfg.tail_fraction);

    adiabatic_run run;
    run.traj.tau0 = cfg.tau0;
    state_vec<5> y{1.0, 0.0, 0.0, 0.0, 0.0}; // Re S, Im S, Re I, Im I, Phi

    auto rhs = [&p](double tau, const state_vec<5>& v) {
        const amplitude_state s{{v[0], v[1]}, {v[2], v[3]}, v[4]};
        const amplitude_derivative d = amplitude_rhs(tau, s, p);
        return state_vec<5>{d.dS.real(), d.dS.imag(), d.dI.real(), d.dI.imag(), d.dphase};
    };

    // Sample density is capped: hard cases take 1e8+ accepted steps and a
    // sample per step would exhaust memory.
    const double sample_spacing = cfg.tau0 / 4095.0;
    double next_sample = -half;
    std::size_t next_cp = 0;
    auto observe = [&](double tau, const state_vec<5>& v) {
        const double norm2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
        run.traj.max_norm_drift = std::max(run.traj.max_norm_drift, std::abs(norm2 - 1.0));
        const double prob = v[2] * v[2] + v[3] * v[3];
        if (record_samples && (tau >= next_sample - 1e-12 || tau >= half)) {
            run.traj.samples.push_back({tau, {v[0], v[1]}, {v[2], v[3]}, prob});
            next_sample = tau + sample_spacing;
        }
        if (next_cp < checkpoints.size() && tau >= checkpoints[next_cp] - 1e-12) {
            run.tail_p.push_back(prob);
            ++next_cp;
        }
    };

    const step_stats stats = integrate_adaptive<5>(rhs, y, -half, half, cfg, checkpoints, observe);
    run.traj.steps_taken = stats.accepted;
    run.traj.rejected_steps = stats.rejected;
    return run;
}

} // namespace detail

// Full trajectory from -tau0/2 to +tau0/2, sampled at accepted steps up to
// ~4096 points spaced evenly across the window.
inline trajectory integrate(const pulse_params& p, const integrator_config& cfg = {}) {
    return detail::integrate_adiabatic(p, cfg, true).traj;
}

// Asymptotic transition probability: mean of P over the tail checkpoints.
inline double asymptotic_probability(const pulse_params& p, const integrator_config& cfg = {}) {
    if (cfg.tau0 != 0.0 && 0.5 * cfg.tau0 < auto_half_window(p))
        throw std::invalid_argument(
            "asymptotic_probability: tau0/2 is below the automatic window rule");
    const auto run = detail::integrate_adiabatic(p, cfg, false);
    double sum = 0.0;
    for (double v : run.tail_p) sum += v;
    return sum / static_cast<double>(run.tail_p.size());
}

// Independent oracle: Schrodinger dynamics in the fixed spinor basis,
//
//   i dpsi/dtau = (1/lambda) [[tau, e^{-i phi}], [e^{+i phi}, -tau]] psi,
//
// started in the lower instantaneous eigenstate and projected onto the
// upper instantaneous eigenstate at the same tail checkpoints.
inline double lab_frame_oracle(const pulse_params& p, const integrator_config& cfg_in = {}) {
    p.validate();
    const integrator_config cfg = resolve_window(p, cfg_in);
    const double half = 0.5 * cfg.tau0;
    const std::vector<double> checkpoints =
        averaging_times(cfg.tau0, cfg.tail_samples, cfg.tail_fraction);

    // eigenstates at tau: |E+> = (cos(th/2), sin(th/2) e^{i phi}),
    //                     |E-> = (sin(th/2), -cos(th/2) e^{i phi})
    auto half_angles = [](double tau) {
        const double c = tau / std::sqrt(1.0 + tau * tau);
        return std::pair{std::sqrt(0.5 * (1.0 + c)), std::sqrt(0.5 * (1.0 - c))};
    };

    const auto [cos_h0, sin_h0] = half_angles(-half);
    const std::complex<double> phase0 = std::polar(1.0, twist_angle(-half, p));
    state_vec<4> y{sin_h0, 0.0, -(cos_h0 * phase0).real(), -(cos_h0 * phase0).imag()};

    auto rhs = [&p](double tau, const state_vec<4>& v) {
        const std::complex<double> u{v[0], v[1]};
        const std::complex<double> w{v[2], v[3]};
        const std::complex<double> off = std::polar(1.0, -twist_angle(tau, p));
        const std::complex<double> i_unit{0.0, 1.0};
        const std::complex<double> du = -i_unit / p.lambda * (tau * u + off * w);
        const std::complex<double> dw = -i_unit / p.lambda * (std::conj(off) * u - tau * w);
        return state_vec<4>{du.real(), du.imag(), dw.real(), dw.imag()};
    };

    std::vector<double> tail_p;
    std::size_t next_cp = 0;
    auto observe = [&](double tau, const state_vec<4>& v) {
        if (next_cp < checkpoints.size() && tau >= checkpoints[next_cp] - 1e-12) {
            const auto [cos_h, sin_h] = half_angles(tau);
            const std::complex<double> u{v[0], v[1]};
            const std::complex<double> w{v[2], v[3]};
            const std::complex<double> conj_phase = std::polar(1.0, -twist_angle(tau, p));
            const std::complex<double> overlap = cos_h * u + sin_h * conj_phase * w;
            tail_p.push_back(std::norm(overlap));
            ++next_cp;
        }
    };

    integrate_adaptive<4>(rhs, y, -half, half, cfg, checkpoints, observe);
    double sum = 0.0;
    for (double v : tail_p) sum += v;
    return sum / static_cast<double>(tail_p.size());
}

} // namespace twistpass
