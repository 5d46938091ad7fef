#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "twistpass/dynamics.hpp"
#include "twistpass/version.hpp"

// Grid sweeps over eta at fixed lambda, and 1-D refinement of eta to locate
// quench minima / pump maxima of the asymptotic transition probability.
// Sweep rows are independent tasks pulled from a shared index counter and
// assembled by grid index, so results are identical for any worker count.

namespace twistpass {

// Fault-tolerance reference fidelity; reported as a flag, never a hard gate.
inline constexpr double k_fault_tolerant_fidelity = 0.9999;

struct optimization_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct sweep_spec {
    double lambda = 1.0;
    int n = 2;
    std::vector<double> eta_grid; // sorted on construction of the result
    integrator_config integrator; // tau0 = 0 applies the auto window per row

    void validate() const {
        pulse_params{lambda, 0.0, n}.validate();
        if (eta_grid.empty())
            throw std::invalid_argument("sweep_spec: eta_grid must be non-empty");
        for (double e : eta_grid)
            if (!std::isfinite(e))
                throw std::invalid_argument("sweep_spec: eta_grid values must be finite");
    }
};

inline std::vector<double> linspace(double start, double stop, int count) {
    if (count < 1) throw std::invalid_argument("linspace: count must be >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    for (int i = 0; i < count; ++i)
        out[i] = start + (stop - start) * i / (count - 1);
    return out;
}

struct sweep_row {
    double eta = 0.0;
    double p = 0.0;
    double fidelity = 1.0; // 1 - p
    std::vector<double> crossings;
    bool meets_ft = false; // fidelity >= k_fault_tolerant_fidelity
    std::string error;     // non-empty if this row's integration failed

    bool ok() const { return error.empty(); }
};

struct sweep_result {
    sweep_spec spec;
    std::string engine_version{k_version};
    std::vector<sweep_row> rows; // ordered by eta
};

inline unsigned default_worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

inline sweep_result sweep(const sweep_spec& spec, unsigned workers = 0) {
    spec.validate();
    if (workers == 0) workers = default_worker_count();

    sweep_result result;
    result.spec = spec;
    std::sort(result.spec.eta_grid.begin(), result.spec.eta_grid.end());
    const std::vector<double>& grid = result.spec.eta_grid;
    result.rows.resize(grid.size());

    auto compute_row = [&](std::size_t i) {
        sweep_row& row = result.rows[i];
        row.eta = grid[i];
        const pulse_params p{spec.lambda, grid[i], spec.n};
        row.crossings = predict_crossings(p).locations;
        try {
            row.p = asymptotic_probability(p, spec.integrator);
            row.fidelity = 1.0 - row.p;
            row.meets_ft = row.fidelity >= k_fault_tolerant_fidelity;
        } catch (const std::exception& e) {
            row.p = std::numeric_limits<double>::quiet_NaN();
            row.fidelity = std::numeric_limits<double>::quiet_NaN();
            row.error = e.what();
        }
    };

    if (workers <= 1 || grid.size() <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) compute_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                compute_row(i);
        };
        std::vector<std::thread> pool;
        const unsigned spawn = std::min<std::size_t>(workers, grid.size());
        pool.reserve(spawn);
        for (unsigned k = 0; k < spawn; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return result;
}

struct optimum_report {
    double eta_star = 0.0;
    double p_star = 0.0;
    double fidelity = 1.0;
    bool meets_ft = false;
    double bracket_lo = 0.0; // final uncertainty interval in eta
    double bracket_hi = 0.0;
    int evaluations = 0;
};

namespace detail {

// Golden-section refinement of min f over [lo, hi], after a coarse grid
// probe that verifies an interior extremum exists (a strictly monotone probe
// is rejected). Interference makes P(eta) oscillate on fine eta scales, so
// callers facing comb-like landscapes should raise probe_points until the
// probe spacing resolves the oscillation. maximize flips the sign.
inline optimum_report golden_section(double lambda, int n, double lo, double hi, double tol_eta,
                                     const integrator_config& cfg, bool maximize,
                                     int probe_points) {
    if (!(hi > lo)) throw std::invalid_argument("optimizer: need bracket hi > lo");
    if (!(tol_eta > 0.0)) throw std::invalid_argument("optimizer: tol_eta must be positive");
    if (probe_points < 3) throw std::invalid_argument("optimizer: probe_points must be >= 3");

    int evaluations = 0;
    auto objective = [&](double eta) {
        ++evaluations;
        const double p = asymptotic_probability(pulse_params{lambda, eta, n}, cfg);
        return maximize ? -p : p;
    };

    std::vector<double> px(probe_points), pf(probe_points);
    for (int i = 0; i < probe_points; ++i) {
        px[i] = lo + (hi - lo) * i / (probe_points - 1);
        pf[i] = objective(px[i]);
    }
    bool increasing = true, decreasing = true;
    for (int i = 1; i < probe_points; ++i) {
        if (pf[i] > pf[i - 1]) decreasing = false;
        if (pf[i] < pf[i - 1]) increasing = false;
    }
    if (increasing || decreasing)
        throw optimization_error(maximize ? "no interior maximum detected"
                                          : "no interior minimum detected");

    // refine around the best interior probe point
    int best_i = 1;
    for (int i = 2; i < probe_points - 1; ++i)
        if (pf[i] < pf[best_i]) best_i = i;
    const double mid = px[best_i];
    const double f_mid = pf[best_i];
    lo = px[best_i - 1];
    hi = px[best_i + 1];

    double best_eta = mid;
    double best_f = f_mid;
    auto consider = [&](double eta, double f) {
        if (f < best_f) {
            best_f = f;
            best_eta = eta;
        }
    };

    constexpr double inv_phi = 0.6180339887498949; // 1/golden ratio
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    consider(x1, f1);
    consider(x2, f2);
    while (b - a > tol_eta) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1);
            consider(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2);
            consider(x2, f2);
        }
    }

    optimum_report rep;
    rep.eta_star = best_eta;
    rep.p_star = maximize ? -best_f : best_f;
    rep.fidelity = 1.0 - rep.p_star;
    rep.meets_ft = rep.fidelity >= k_fault_tolerant_fidelity;
    rep.bracket_lo = a;
    rep.bracket_hi = b;
    rep.evaluations = evaluations;
    return rep;
}

} // namespace detail

// Locate the eta that minimizes the asymptotic transition probability
// (destructive interference, transition quenching) inside [lo, hi].
inline optimum_report find_quench(double lambda, int n, double lo, double hi, double tol_eta,
                                  const integrator_config& cfg = {}, int probe_points = 5) {
    return detail::golden_section(lambda, n, lo, hi, tol_eta, cfg, false, probe_points);
}

// Locate the eta that maximizes the asymptotic transition probability
// (constructive interference, non-resonant pumping) inside [lo, hi].
inline optimum_report find_pump(double lambda, int n, double lo, double hi, double tol_eta,
                                const integrator_config& cfg = {}, int probe_points = 5) {
    return detail::golden_section(lambda, n, lo, hi, tol_eta, cfg, true, probe_points);
}

} // namespace twistpass
