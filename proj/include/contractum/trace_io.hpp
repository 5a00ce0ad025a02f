#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include "contractum/integral_solver.hpp"
#include "contractum/numeric_text.hpp"
#include "contractum/picard_engine.hpp"

namespace contractum {

inline std::string trace_value(double x) { return format_real(x); }

/// Grid-function iterates are summarised by their sup norm.
inline std::string trace_value(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values)
        m = std::max(m, std::fabs(v));
    return format_real(m);
}

/// Columns n, x_n, gap1, gap2, log_scaled1, log_scaled2; one row per iterate.
/// Cells past the end of a gap sequence are left empty. Values use the
/// shortest round-trip decimal form, so equal traces give identical files.
template <class Point>
void write_trace_csv(std::ostream& out, const IterationTrace<Point>& source, double s) {
    IterationTrace<Point> trace = source;
    trace.rescale(s);
    out << "n,x_n,gap1,gap2,log_scaled1,log_scaled2\n";
    auto cell = [](const std::vector<double>& v, std::size_t n) { return n < v.size() ? format_real(v[n]) : ""; };
    for (std::size_t n = 0; n < trace.points.size(); ++n) {
        out << n << ',' << trace_value(trace.points[n]) << ',' << cell(trace.gap1, n) << ',' << cell(trace.gap2, n)
            << ',' << cell(trace.log_scaled1, n) << ',' << cell(trace.log_scaled2, n) << '\n';
    }
}

} // namespace contractum
