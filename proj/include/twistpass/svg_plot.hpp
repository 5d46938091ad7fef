#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistpass/dynamics.hpp"

// Minimal deterministic SVG line chart of P(tau) versus tau. The output
// contains no timestamps or environment-dependent content, so identical
// trajectories render to byte-identical files.

namespace twistpass::svg {

struct plot_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Tick spacing snapped to 1/2/5 times a power of ten.
inline double nice_step(double span, int target_ticks) {
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    double snap = 10.0;
    if (r <= 1.0) snap = 1.0;
    else if (r <= 2.0) snap = 2.0;
    else if (r <= 5.0) snap = 5.0;
    return snap * mag;
}

inline std::vector<double> ticks(double lo, double hi, int target = 8) {
    const double step = nice_step(hi - lo, target);
    std::vector<double> out;
    double t = std::ceil(lo / step) * step;
    for (; t <= hi + 0.5 * step; t += step) out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return out;
}

} // namespace detail

// Render samples as a line chart. The P axis auto-fits the data but is
// clamped to [0, 1.05]; the tau axis fits the sampled range exactly.
inline void write_plot(const std::string& path, const trajectory& traj,
                       const std::string& title = "") {
    if (traj.samples.empty()) throw plot_error("cannot plot an empty trajectory");

    const double width = 800.0, height = 500.0;
    const double ml = 70.0, mr = 20.0, mt = title.empty() ? 20.0 : 40.0, mb = 50.0;

    double x_lo = traj.samples.front().tau, x_hi = traj.samples.back().tau;
    if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
    double p_max = 0.0;
    for (const trajectory_sample& s : traj.samples) p_max = std::max(p_max, s.p);
    const double y_lo = 0.0;
    const double y_hi = std::min(1.05, std::max(p_max * 1.1, 1e-6));

    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
    auto py = [&](double y) {
        return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb);
    };

    std::ofstream out(path);
    if (!out) throw plot_error("cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    out << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << px(x_lo) << "\" y1=\"" << py(y_lo) << "\" x2=\"" << px(x_hi)
        << "\" y2=\"" << py(y_lo) << "\"/>\n"
        << "<line x1=\"" << px(x_lo) << "\" y1=\"" << py(y_lo) << "\" x2=\"" << px(x_lo)
        << "\" y2=\"" << py(y_hi) << "\"/>\n</g>\n";

    out << "<g font-family=\"monospace\" font-size=\"12\" fill=\"black\">\n";
    for (double t : detail::ticks(x_lo, x_hi)) {
        out << "<line stroke=\"black\" x1=\"" << px(t) << "\" y1=\"" << py(y_lo) << "\" x2=\""
            << px(t) << "\" y2=\"" << py(y_lo) + 5 << "\"/>\n"
            << "<text text-anchor=\"middle\" x=\"" << px(t) << "\" y=\"" << py(y_lo) + 20 << "\">"
            << detail::fmt(t) << "</text>\n";
    }
    for (double t : detail::ticks(y_lo, y_hi, 6)) {
        out << "<line stroke=\"black\" x1=\"" << px(x_lo) - 5 << "\" y1=\"" << py(t) << "\" x2=\""
            << px(x_lo) << "\" y2=\"" << py(t) << "\"/>\n"
            << "<text text-anchor=\"end\" x=\"" << px(x_lo) - 8 << "\" y=\"" << py(t) + 4 << "\">"
            << detail::fmt(t) << "</text>\n";
    }
    out << "<text text-anchor=\"middle\" x=\"" << (ml + width - mr) / 2 << "\" y=\""
        << height - 10 << "\">tau</text>\n"
        << "<text text-anchor=\"middle\" x=\"18\" y=\"" << (mt + height - mb) / 2
        << "\" transform=\"rotate(-90 18 " << (mt + height - mb) / 2 << ")\">P</text>\n";
    if (!title.empty())
        out << "<text text-anchor=\"middle\" x=\"" << width / 2 << "\" y=\"24\">" << title
            << "</text>\n";
    out << "</g>\n";

    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" points=\"";
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        if (k > 0) out << ' ';
        out << detail::fmt(px(traj.samples[k].tau)) << ',' << detail::fmt(py(traj.samples[k].p));
    }
    out << "\"/>\n</svg>\n";
    if (!out) throw plot_error("write failed: " + path);
}

} // namespace twistpass::svg
