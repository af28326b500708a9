#include "cmplchg/cubature.hpp"

#include <cmath>

#include "cmplchg/errors.hpp"

namespace cmplchg {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Cubature build_cylinder(double radius, double height, int nr, int ntheta, int nz) {
    if (!(radius > 0.0) || !(height > 0.0))
        throw Error(ErrorKind::invalid_argument, "cylinder radius and height must be positive");
    if (nr < 1 || ntheta < 1 || nz < 1)
        throw Error(ErrorKind::invalid_argument, "cylinder resolutions nr, ntheta, nz must be >= 1");

    Cubature c;
    c.meta.shape = "cylinder";
    c.meta.radius = radius;
    c.meta.height = height;
    c.meta.nr = nr;
    c.meta.ntheta = ntheta;
    c.meta.nz = nz;
    const std::size_t count = static_cast<std::size_t>(nr) * ntheta * nz;
    c.nodes.reserve(count);
    c.weights.reserve(count);
    c.ring_ids.reserve(count);

    const double dtheta = 2.0 * kPi / ntheta;
    // Azimuthal centroid factor sinc(dtheta/2); a full annulus (ntheta == 1)
    // has its centroid exactly on the axis.
    const double azim = (ntheta == 1) ? 0.0 : std::sin(0.5 * dtheta) / (0.5 * dtheta);

    for (int iz = 0; iz < nz; ++iz) {
        const double z0 = height * iz / nz;
        const double z1 = height * (iz + 1) / nz;
        const double zm = 0.5 * (z0 + z1);
        for (int ir = 0; ir < nr; ++ir) {
            const double r0 = radius * ir / nr;
            const double r1 = radius * (ir + 1) / nr;
            // Exact centroid radius of the annular sector:
            // (2/3) (r1^3 - r0^3)/(r1^2 - r0^2) * sinc(dtheta/2).
            const double rho =
                (2.0 / 3.0) * (r1 * r1 * r1 - r0 * r0 * r0) / (r1 * r1 - r0 * r0) * azim;
            const double cell_volume = 0.5 * (r1 * r1 - r0 * r0) * dtheta * (z1 - z0);
            for (int jt = 0; jt < ntheta; ++jt) {
                // Mid-angle of sector jt; index 0 sits at pi/ntheta, so no
                // node lands on the x1 axis unless the geometry forces it.
                const double theta = (2 * jt + 1) * kPi / ntheta;
                c.nodes.push_back({rho * std::cos(theta), rho * std::sin(theta), zm});
                c.weights.push_back(cell_volume);
                c.ring_ids.push_back(iz * nr + ir);
            }
        }
    }
    return c;
}

Cubature build_box(double lx, double ly, double lz, int nx, int ny, int nz) {
    if (!(lx > 0.0) || !(ly > 0.0) || !(lz > 0.0))
        throw Error(ErrorKind::invalid_argument, "box dimensions must be positive");
    if (nx < 1 || ny < 1 || nz < 1)
        throw Error(ErrorKind::invalid_argument, "box resolutions nx, ny, nz must be >= 1");

    Cubature c;
    c.meta.shape = "box";
    c.meta.lx = lx;
    c.meta.ly = ly;
    c.meta.lz = lz;
    c.meta.nx = nx;
    c.meta.ny = ny;
    c.meta.nz = nz;
    const std::size_t count = static_cast<std::size_t>(nx) * ny * nz;
    c.nodes.reserve(count);
    c.weights.reserve(count);

    const double cell_volume = (lx / nx) * (ly / ny) * (lz / nz);
    for (int iz = 0; iz < nz; ++iz) {
        const double z = (iz + 0.5) * lz / nz;  // base at x3 = 0
        for (int iy = 0; iy < ny; ++iy) {
            const double y = -0.5 * ly + (iy + 0.5) * ly / ny;
            for (int ix = 0; ix < nx; ++ix) {
                const double x = -0.5 * lx + (ix + 0.5) * lx / nx;
                c.nodes.push_back({x, y, z});
                c.weights.push_back(cell_volume);
            }
        }
    }
    return c;
}

std::vector<double> axisym_project(const Cubature& c, const std::vector<double>& v) {
    if (c.ring_ids.empty())
        throw Error(ErrorKind::unsupported_domain,
                    "axisymmetric projection requires a ring-structured (cylinder) cubature");
    if (v.size() != c.nodes.size())
        throw Error(ErrorKind::invalid_argument, "nodal value count does not match the cubature");

    int nrings = 0;
    for (int id : c.ring_ids) nrings = std::max(nrings, id + 1);

    std::vector<double> ring_w(nrings, 0.0);
    std::vector<double> ring_wv(nrings, 0.0);
    std::vector<double> ring_first(nrings, 0.0);
    std::vector<char> ring_seen(nrings, 0);
    std::vector<char> ring_uniform(nrings, 1);

    for (std::size_t a = 0; a < v.size(); ++a) {
        const int id = c.ring_ids[a];
        ring_w[id] += c.weights[a];
        ring_wv[id] += c.weights[a] * v[a];
        if (!ring_seen[id]) {
            ring_seen[id] = 1;
            ring_first[id] = v[a];
        } else if (v[a] != ring_first[id]) {
            ring_uniform[id] = 0;
        }
    }

    std::vector<double> out(v.size());
    for (std::size_t a = 0; a < v.size(); ++a) {
        const int id = c.ring_ids[a];
        // An already-uniform ring passes through unchanged, which makes the
        // projection exactly idempotent.
        out[a] = ring_uniform[id] ? ring_first[id] : ring_wv[id] / ring_w[id];
    }
    return out;
}

}  // namespace cmplchg
