#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gidlab/feller.hpp"
#include "gidlab/pointproc.hpp"
#include "gidlab/renewal.hpp"

namespace gidlab {

namespace detail {

// shortest exact decimal round-trip, so identical doubles serialize identically
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace detail

inline void write_value_csv(const std::string& path, const std::vector<double>& values) {
    auto out = detail::open_out(path);
    out << "value\n";
    for (double v : values) out << detail::fmt(v) << "\n";
}

inline void write_grid_csv(const std::string& path, const GridFunction& g) {
    auto out = detail::open_out(path);
    out << "x,value\n";
    for (std::size_t i = 0; i < g.size(); ++i)
        out << detail::fmt(g.x(i)) << "," << detail::fmt(g[i]) << "\n";
}

inline void write_marked_csv(const std::string& path, const MarkedPath& m) {
    auto out = detail::open_out(path);
    out << "time,mark\n";
    for (std::size_t i = 0; i < m.event_times.size(); ++i)
        out << detail::fmt(m.event_times[i]) << "," << m.marks[i] << "\n";
}

inline void write_sequence_csv(const std::string& path, const DiscreteRenewalSequence& seq) {
    auto out = detail::open_out(path);
    out << "n,f_n,u_n\n";
    for (std::size_t n = 0; n < seq.u.size(); ++n)
        out << n << "," << detail::fmt(seq.f[n]) << "," << detail::fmt(seq.u[n]) << "\n";
}

}  // namespace gidlab
