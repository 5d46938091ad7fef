#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

// Adjustable step-size fourth-order Runge-Kutta driver. Step doubling: one
// full step is compared against two half steps; the difference controls the
// step size and supplies a fifth-order local extrapolation of the accepted
// state.

namespace twistpass {

struct integration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct integrator_config {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double initial_step = 1e-3;
    double max_step = 1.0;
    double tau0 = 0.0;          // total window; 0 selects the automatic window rule
    int tail_samples = 10;      // asymptotic average: sample count ...
    double tail_fraction = 0.15; // ... spread over this final fraction of the window

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("integrator_config: tolerances must be positive");
        if (!(initial_step > 0.0))
            throw std::invalid_argument("integrator_config: initial_step must be positive");
        if (!(max_step >= initial_step))
            throw std::invalid_argument("integrator_config: max_step must be >= initial_step");
        if (tau0 < 0.0 || !std::isfinite(tau0))
            throw std::invalid_argument("integrator_config: tau0 must be >= 0 and finite");
        if (tail_samples < 2)
            throw std::invalid_argument("integrator_config: tail_samples must be >= 2");
        if (!(tail_fraction > 0.0) || !(tail_fraction < 0.5))
            throw std::invalid_argument("integrator_config: tail_fraction must be in (0, 0.5)");
    }
};

struct step_stats {
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
};

template <std::size_t N>
using state_vec = std::array<double, N>;

template <std::size_t N, class Rhs>
state_vec<N> rk4_step(Rhs&& f, double t, const state_vec<N>& y, double h) {
    const state_vec<N> k1 = f(t, y);
    state_vec<N> tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const state_vec<N> k2 = f(t + 0.5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const state_vec<N> k3 = f(t + 0.5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
    const state_vec<N> k4 = f(t + h, tmp);
    state_vec<N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

// Integrate y' = f(t, y) from t0 to t1 (t1 > t0). Steps are clamped so every
// checkpoint time is hit exactly; the observer sees every accepted state,
// including the initial one. Checkpoints must be sorted and lie in [t0, t1].
template <std::size_t N, class Rhs, class Observer>
step_stats integrate_adaptive(Rhs&& f, state_vec<N>& y, double t0, double t1,
                              const integrator_config& cfg,
                              std::span<const double> checkpoints, Observer&& observe) {
    static constexpr double k_safety = 0.9;
    static constexpr double k_grow = -0.2;
    static constexpr double k_shrink = -0.25;
    static constexpr double k_min_step = 1e-12;

    cfg.validate();
    if (!(t1 > t0)) throw std::invalid_argument("integrate_adaptive: need t1 > t0");

    step_stats stats;
    double t = t0;
    double h = std::min(cfg.initial_step, cfg.max_step);
    std::size_t next_cp = 0;
    while (next_cp < checkpoints.size() && checkpoints[next_cp] <= t0) ++next_cp;
    observe(t, y);

    while (t < t1) {
        double limit = t1;
        if (next_cp < checkpoints.size()) limit = std::min(limit, checkpoints[next_cp]);
        bool clamped = false;
        double h_try = h;
        if (t + h_try >= limit) {
            h_try = limit - t;
            clamped = true;
        }

        const state_vec<N> full = rk4_step(f, t, y, h_try);
        state_vec<N> half = rk4_step(f, t, y, 0.5 * h_try);
        half = rk4_step(f, t + 0.5 * h_try, half, 0.5 * h_try);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double scale =
                cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(half[i]));
            err = std::max(err, std::abs(half[i] - full[i]) / scale);
        }

        if (err <= 1.0) {
            for (std::size_t i = 0; i < N; ++i)
                y[i] = half[i] + (half[i] - full[i]) / 15.0;
            t = clamped ? limit : t + h_try;
            ++stats.accepted;
            observe(t, y);
            if (next_cp < checkpoints.size() && t >= checkpoints[next_cp]) ++next_cp;
            if (!clamped) {
                // a step shortened only to land on a checkpoint says nothing
                // about the natural step size, so leave h alone in that case
                const double factor =
                    err > 0.0 ? std::min(5.0, k_safety * std::pow(err, k_grow)) : 5.0;
                h = std::min(cfg.max_step, h_try * factor);
            }
        } else {
            ++stats.rejected;
            h = h_try * std::max(0.1, k_safety * std::pow(err, k_shrink));
        }
        if (!(h >= k_min_step))
            throw integration_error("integrate_adaptive: step size underflow below 1e-12");
    }
    return stats;
}

} // namespace twistpass
