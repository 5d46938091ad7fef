#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "twistpass/dynamics.hpp"
#include "twistpass/sweep.hpp"

// Delimited-text serialization. Numbers are written with 17 significant
// digits so every double round-trips bit-exactly through the files.

namespace twistpass::io {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& field, const std::string& path, std::size_t line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw io_error(path + ": line " + std::to_string(line) + ": bad number '" + field + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(s);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

inline constexpr const char* k_trajectory_header = "tau,re_S,im_S,re_I,im_I,P";

inline void write_trajectory_csv(const std::string& path, const trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << k_trajectory_header << '\n';
    for (const trajectory_sample& s : traj.samples) {
        out << format_full(s.tau) << ',' << format_full(s.S.real()) << ','
            << format_full(s.S.imag()) << ',' << format_full(s.I.real()) << ','
            << format_full(s.I.imag()) << ',' << format_full(s.p) << '\n';
    }
    if (!out) throw io_error("write failed: " + path);
}

inline trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line != k_trajectory_header)
        throw io_error(path + ": line 1: expected header '" + std::string(k_trajectory_header) +
                       "'");
    trajectory traj;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 6)
            throw io_error(path + ": line " + std::to_string(lineno) + ": expected 6 fields, got " +
                           std::to_string(f.size()));
        trajectory_sample s;
        s.tau = parse_double(f[0], path, lineno);
        s.S = {parse_double(f[1], path, lineno), parse_double(f[2], path, lineno)};
        s.I = {parse_double(f[3], path, lineno), parse_double(f[4], path, lineno)};
        s.p = parse_double(f[5], path, lineno);
        traj.samples.push_back(s);
    }
    if (!traj.samples.empty())
        traj.tau0 = traj.samples.back().tau - traj.samples.front().tau;
    return traj;
}

// Sweep table. crossing_locations holds all predicted crossings of the row,
// joined with ';' so the file stays a plain comma-delimited table. An
// optional analytic column (e.g. the exact quadratic-twist result) is
// appended when `analytic` is non-empty; it must then match rows 1:1.
inline void write_sweep_csv(const std::string& path, const sweep_result& result,
                            const std::string& analytic_name = "",
                            const std::vector<double>& analytic = {}) {
    const bool with_analytic = !analytic_name.empty();
    if (with_analytic && analytic.size() != result.rows.size())
        throw io_error("analytic column size mismatch");
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << "eta,P,fidelity,n_crossings,crossing_locations";
    if (with_analytic) out << ',' << analytic_name;
    out << '\n';
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
        const sweep_row& row = result.rows[r];
        out << format_full(row.eta) << ',' << format_full(row.p) << ','
            << format_full(row.fidelity) << ',' << row.crossings.size() << ',';
        for (std::size_t k = 0; k < row.crossings.size(); ++k) {
            if (k > 0) out << ';';
            out << format_full(row.crossings[k]);
        }
        if (with_analytic) out << ',' << format_full(analytic[r]);
        out << '\n';
    }
    if (!out) throw io_error("write failed: " + path);
}

struct sweep_table_row {
    double eta = 0.0;
    double p = 0.0;
    double fidelity = 0.0;
    std::vector<double> crossings;
    double analytic = 0.0;
    bool has_analytic = false;
};

inline std::vector<sweep_table_row> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw io_error(path + ": empty file");
    const std::vector<std::string> header = split(line, ',');
    if (header.size() < 5 || header[0] != "eta")
        throw io_error(path + ": line 1: not a sweep table header");
    const bool with_analytic = header.size() > 5;

    std::vector<sweep_table_row> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != header.size())
            throw io_error(path + ": line " + std::to_string(lineno) + ": expected " +
                           std::to_string(header.size()) + " fields, got " +
                           std::to_string(f.size()));
        sweep_table_row row;
        row.eta = parse_double(f[0], path, lineno);
        row.p = parse_double(f[1], path, lineno);
        row.fidelity = parse_double(f[2], path, lineno);
        const std::size_t n = static_cast<std::size_t>(parse_double(f[3], path, lineno));
        if (!f[4].empty())
            for (const std::string& x : split(f[4], ';')) row.crossings.push_back(parse_double(x, path, lineno));
        if (row.crossings.size() != n)
            throw io_error(path + ": line " + std::to_string(lineno) +
                           ": n_crossings disagrees with crossing_locations");
        if (with_analytic) {
            row.analytic = parse_double(f[5], path, lineno);
            row.has_analytic = true;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace twistpass::io
