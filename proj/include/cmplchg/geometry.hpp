#pragma once

#include <cmath>

namespace cmplchg {

// Point / vector in R^3. The Ox3 axis is the preferred interaction direction.
struct Vec3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
}

inline Vec3 operator*(double s, const Vec3& v) {
    return {s * v.x1, s * v.x2, s * v.x3};
}

inline double dot(const Vec3& a, const Vec3& b) {
    return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.x2 * b.x3 - a.x3 * b.x2,
            a.x3 * b.x1 - a.x1 * b.x3,
            a.x1 * b.x2 - a.x2 * b.x1};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

// Rigid pose of the second body: rotate about the unit vector `axis` by
// `angle` (radians), then translate by `r`, i.e. y' = r + S y.
struct Pose {
    Vec3 r;
    Vec3 axis{0.0, 0.0, 1.0};
    double angle = 0.0;
};

// Rodrigues rotation about a unit axis. angle == 0 is an exact identity so
// unrotated poses stay bit-reproducible.
inline Vec3 rotate(const Vec3& axis, double angle, const Vec3& v) {
    if (angle == 0.0) return v;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const Vec3 kxv = cross(axis, v);
    const double kdv = dot(axis, v);
    const double m = kdv * (1.0 - c);
    return {v.x1 * c + kxv.x1 * s + axis.x1 * m,
            v.x2 * c + kxv.x2 * s + axis.x2 * m,
            v.x3 * c + kxv.x3 * s + axis.x3 * m};
}

inline Vec3 apply_pose(const Pose& p, const Vec3& y) {
    return p.r + rotate(p.axis, p.angle, y);
}

}  // namespace cmplchg
