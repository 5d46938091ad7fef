#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "twistpass/model.hpp"

// Avoided crossings of the rotating-frame energy gap. The gap
// g(tau) = 2 sqrt(1 + (tau - eta tau^(n-1))^2) is minimal where
// tau = eta tau^(n-1): always at tau = 0, plus the real roots of
// tau^(n-2) = 1/eta for n >= 3. Root count by (parity of n, sign of eta):
//
//   eta > 0, n odd   -> {0, +(1/eta)^(1/(n-2))}
//   eta > 0, n even  -> {0, +-(1/eta)^(1/(n-2))}
//   eta < 0, n odd   -> {0, -(1/|eta|)^(1/(n-2))}
//   eta < 0, n even  -> {0}
//
// eta = 0 and n = 2 are the degenerate single-crossing cases.

namespace twistpass {

struct crossing_set {
    std::vector<double> locations;     // sorted, always contains 0
    std::optional<double> separation;  // |tau2 - tau1| between adjacent crossings
};

// Rotating-frame energy gap in units of b.
inline double rotating_gap(double tau, const pulse_params& p) {
    const double z = tau - p.eta * ipow(tau, p.n - 1);
    return 2.0 * std::sqrt(1.0 + z * z);
}

inline crossing_set predict_crossings(const pulse_params& p) {
    p.validate();
    crossing_set out;
    out.locations.push_back(0.0);
    if (p.n >= 3 && p.eta != 0.0) {
        const double r = std::pow(1.0 / std::abs(p.eta), 1.0 / (p.n - 2));
        if (p.n % 2 == 1) {
            out.locations.push_back(p.eta > 0.0 ? r : -r);
        } else if (p.eta > 0.0) {
            out.locations.push_back(r);
            out.locations.push_back(-r);
        }
    }
    std::sort(out.locations.begin(), out.locations.end());
    if (out.locations.size() >= 2)
        out.separation = std::pow(1.0 / std::abs(p.eta), 1.0 / (p.n - 2));
    return out;
}

// Separation of adjacent crossings, (1/|eta|)^(1/(n-2)); absent when only
// tau = 0 exists.
inline std::optional<double> crossing_separation(const pulse_params& p) {
    return predict_crossings(p).separation;
}

} // namespace twistpass
