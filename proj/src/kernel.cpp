#include "cmplchg/kernel.hpp"

#include <cmath>

#include "cmplchg/errors.hpp"

namespace cmplchg {

void validate(const KernelSpec& spec) {
    if (spec.kind == KernelKind::smooth_gaussian && !(spec.sigma > 0.0))
        throw Error(ErrorKind::invalid_argument, "smooth_gaussian requires sigma > 0");
    if (spec.kind == KernelKind::coulomb_z && spec.epsilon < 0.0)
        throw Error(ErrorKind::invalid_argument, "coulomb_z requires epsilon >= 0");
    if (!(spec.d > 0.0))
        throw Error(ErrorKind::invalid_argument, "separation d must be > 0");
}

KernelKind parse_kernel_kind(const std::string& name) {
    if (name == "smooth_gaussian") return KernelKind::smooth_gaussian;
    if (name == "coulomb_z") return KernelKind::coulomb_z;
    throw Error(ErrorKind::invalid_argument, "unknown kernel kind '" + name + "'");
}

std::string to_string(KernelKind kind) {
    return kind == KernelKind::smooth_gaussian ? "smooth_gaussian" : "coulomb_z";
}

double eval_displaced(const KernelSpec& spec, const Vec3& x, const Vec3& y_prime) {
    const double dx1 = x.x1 - y_prime.x1;
    const double dx2 = x.x2 - y_prime.x2;
    const double dx3 = x.x3 - y_prime.x3;
    const double s2 = dx1 * dx1 + dx2 * dx2 + dx3 * dx3;
    if (spec.kind == KernelKind::smooth_gaussian)
        return -std::exp(-s2 / (2.0 * spec.sigma * spec.sigma));
    const double denom2 = s2 + spec.epsilon * spec.epsilon;
    if (denom2 == 0.0)
        throw Error(ErrorKind::singular_kernel,
                    "coulomb_z evaluated at zero separation with epsilon = 0");
    return dx3 / (denom2 * std::sqrt(denom2));
}

double eval(const KernelSpec& spec, const Vec3& x, const Vec3& y) {
    if (spec.kind == KernelKind::coulomb_z)
        return eval_displaced(spec, x, Vec3{y.x1, y.x2, y.x3 + spec.d});
    // The smooth model kernel describes the limit position directly.
    return eval_displaced(spec, x, y);
}

double eval_posed(const KernelSpec& spec, const Vec3& x, const Vec3& y, const Pose& pose) {
    if (std::abs(norm(pose.axis) - 1.0) > 1e-12)
        throw Error(ErrorKind::invalid_argument, "rotation axis must be a unit vector");
    return eval_displaced(spec, x, apply_pose(pose, y));
}

}  // namespace cmplchg
