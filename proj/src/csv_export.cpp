#include "cmplchg/csv_export.hpp"

#include <cstdio>
#include <fstream>

#include "cmplchg/errors.hpp"

namespace cmplchg {

namespace {

// 17 significant decimal digits round-trip any IEEE-754 double bitwise.
void append_f64(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    line += buf;
}

}  // namespace

void export_quadruple(const Quadruple& q, const Cubature& c, const std::string& path) {
    const int n = c.size();
    if (static_cast<int>(q.phi.size()) != n)
        throw Error(ErrorKind::invalid_argument,
                    "quadruple length does not match the cubature size");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_error, "cannot open \"" + path + "\" for writing");
    out << "x1,x2,x3,w,phi,Phi,psi,Psi\n";
    std::string line;
    for (int a = 0; a < n; ++a) {
        line.clear();
        const double cols[8] = {c.nodes[a].x1, c.nodes[a].x2, c.nodes[a].x3, c.weights[a],
                                q.phi[a],      q.Phi[a],      q.psi[a],      q.Psi[a]};
        for (int f = 0; f < 8; ++f) {
            if (f) line += ',';
            append_f64(line, cols[f]);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw Error(ErrorKind::io_error, "short write to \"" + path + "\"");
}

}  // namespace cmplchg
