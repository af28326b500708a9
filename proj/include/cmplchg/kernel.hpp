#pragma once

#include <string>

#include "cmplchg/geometry.hpp"

namespace cmplchg {

enum class KernelKind {
    smooth_gaussian,  // smooth negative-definite model kernel
    coulomb_z,        // axis-projected softened Coulomb force
};

// Interaction-kernel parameters. `d` is the body separation along Ox3: it
// shifts the coulomb_z source body and serves as the canonical separation
// for posed evaluations. The smooth model kernel describes the limit
// position and depends on the plain distance |x - y| only.
struct KernelSpec {
    KernelKind kind = KernelKind::smooth_gaussian;
    double sigma = 0.5;    // smooth_gaussian length scale (> 0)
    double epsilon = 0.0;  // coulomb_z softening length (>= 0)
    double d = 1.2;        // separation along Ox3 (> 0)
};

// Throws Error(invalid_argument) on out-of-range parameters.
void validate(const KernelSpec& spec);

KernelKind parse_kernel_kind(const std::string& name);
std::string to_string(KernelKind kind);

// Kernel value on an already-displaced source point y'. Sign convention:
// positive = attraction along Ox3.
//   smooth_gaussian: -exp(-|x - y'|^2 / (2 sigma^2)), strictly negative, so
//     like-sign densities always repel;
//   coulomb_z: (x3 - y'3) / (|x - y'|^2 + eps^2)^(3/2), the e3 projection of
//     the softened Coulomb force on the left body.
// Throws Error(singular_kernel) when the coulomb_z denominator vanishes.
double eval_displaced(const KernelSpec& spec, const Vec3& x, const Vec3& y_prime);

// Limit-position kernel between cubature nodes: coulomb_z displaces the
// source by d along Ox3; smooth_gaussian uses the plain distance.
double eval(const KernelSpec& spec, const Vec3& x, const Vec3& y);

// Kernel with the source body rigidly posed: y' = r + S y. The pose supplies
// the full displacement (d plays no role here); at pose (r = d*e3, identity)
// this reproduces eval exactly for coulomb_z, and at r = 0 for
// smooth_gaussian. Throws Error(invalid_argument) on a non-unit axis.
double eval_posed(const KernelSpec& spec, const Vec3& x, const Vec3& y, const Pose& pose);

}  // namespace cmplchg
