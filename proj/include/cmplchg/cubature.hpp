#pragma once

#include <string>
#include <vector>

#include "cmplchg/geometry.hpp"

namespace cmplchg {

// Shape and resolution parameters of the generating domain, kept for
// reproducibility, cache fingerprinting and ring grouping.
struct ShapeMeta {
    std::string shape;  // "cylinder" or "box"
    double radius = 0.0, height = 0.0;     // cylinder dimensions
    double lx = 0.0, ly = 0.0, lz = 0.0;   // box dimensions
    int nr = 0, ntheta = 0;                // cylinder resolutions
    int nx = 0, ny = 0;                    // box resolutions
    int nz = 0;                            // axial resolution (both shapes)
};

// Quadrature discretization of the body domain Q: nodes, positive weights
// that partition the volume exactly, plus shape metadata.
struct Cubature {
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    ShapeMeta meta;
    // ring_ids[a] identifies the (radial, axial) cell of node a; nodes
    // sharing a ring id form one azimuthal ring. Empty for box domains.
    std::vector<int> ring_ids;

    int size() const { return static_cast<int>(nodes.size()); }
};

// Cylinder {x1^2 + x2^2 <= radius^2, 0 <= x3 <= height} split into
// nr x ntheta x nz annular-sector cells. Nodes sit at exact cell centroids;
// weights are exact cell volumes. Node order is z-major, then ring, then
// angle; angle index 0 sits at theta = pi/ntheta so rotation by 2*pi/ntheta
// maps the node set onto itself.
Cubature build_cylinder(double radius, double height, int nr, int ntheta, int nz);

// Midpoint-rule grid on a box centered on the Ox3 axis with its base at
// x3 = 0; weights are exact cell volumes.
Cubature build_box(double lx, double ly, double lz, int nx, int ny, int nz);

// Replaces every node value by the weight-averaged value over its ring,
// producing a distribution invariant under the ring rotation symmetry. Total
// charge is conserved. Rings whose values are already uniform pass through
// unchanged, which makes the projection exactly idempotent.
std::vector<double> axisym_project(const Cubature& c, const std::vector<double>& v);

}  // namespace cmplchg
