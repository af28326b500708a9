#include "cmplchg/verify.hpp"

#include <cmath>
#include <cstddef>
#include <exception>
#include <vector>

#include "cmplchg/errors.hpp"
#include "cmplchg/kernel.hpp"

namespace cmplchg {

InteractionMatrix interaction_matrix(const DiscreteOperator& op, const Quadruple& q) {
    const ChargeDistribution* dist[4] = {&q.phi, &q.Phi, &q.psi, &q.Psi};
    InteractionMatrix m{};
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            const double v = pair_force(op, *dist[a], *dist[b]);
            m[a][b] = v;
            m[b][a] = v;
        }
    return m;
}

Mode parse_mode(const std::string& name) {
    if (name == "weak") return Mode::weak;
    if (name == "strong") return Mode::strong;
    throw Error(ErrorKind::config_error, "unknown mode \"" + name + "\" (expected weak or strong)");
}

std::string to_string(Mode mode) { return mode == Mode::weak ? "weak" : "strong"; }

namespace {

struct ConditionSpec {
    const char* name;
    int a, b;
    bool positive;  // true: requires "> tol" in both modes
};

// The two cross-pair forces must be positive; every self force and every
// cross force between the two bodies of a pair must be nonpositive (weak)
// or strictly negative (strong).
constexpr ConditionSpec kConditions[10] = {
    {"I<phi,Phi>", 0, 1, true},  {"I<psi,Psi>", 2, 3, true},
    {"I<phi,phi>", 0, 0, false}, {"I<Phi,Phi>", 1, 1, false},
    {"I<psi,psi>", 2, 2, false}, {"I<Psi,Psi>", 3, 3, false},
    {"I<phi,psi>", 0, 2, false}, {"I<phi,Psi>", 0, 3, false},
    {"I<Phi,psi>", 1, 2, false}, {"I<Phi,Psi>", 1, 3, false},
};

}  // namespace

VerificationReport check_system(const InteractionMatrix& m, Mode mode, double tol) {
    if (!(tol >= 0.0) || !std::isfinite(tol))
        throw Error(ErrorKind::invalid_argument, "tolerance must be finite and nonnegative");

    VerificationReport report;
    report.matrix = m;
    report.mode = mode;
    report.tol = tol;
    report.overall_pass = true;

    bool have_margin = false;
    for (const auto& spec : kConditions) {
        Condition c;
        c.name = spec.name;
        c.value = m[spec.a][spec.b];
        bool strict = true;
        if (spec.positive) {
            c.required_relation = "> tol";
            c.passed = c.value > tol;
        } else if (mode == Mode::strong) {
            c.required_relation = "< -tol";
            c.passed = c.value < -tol;
        } else {
            c.required_relation = "<= tol";
            c.passed = c.value <= tol;
            strict = false;  // weak negatives allow zero; they carry no margin
        }
        report.overall_pass = report.overall_pass && c.passed;
        if (strict && (!have_margin || std::abs(c.value) < std::abs(report.margin))) {
            report.margin = c.value;
            have_margin = true;
        }
        report.conditions.push_back(std::move(c));
    }
    return report;
}

double default_tol(const EigenSystem& es) {
    double lmax = 0.0;
    for (double l : es.eigenvalues) lmax = std::max(lmax, std::abs(l));
    return 1e-10 * lmax;
}

double default_tol(const InteractionMatrix& m) {
    double emax = 0.0;
    for (const auto& row : m)
        for (double v : row) emax = std::max(emax, std::abs(v));
    return 1e-12 * emax;
}

PoseScanResult pose_scan(const Cubature& c, const KernelSpec& spec,
                         const ChargeDistribution& phi, const ChargeDistribution& psi,
                         const PoseGrid& grid) {
    const int n = c.size();
    if (static_cast<int>(phi.size()) != n || static_cast<int>(psi.size()) != n)
        throw Error(ErrorKind::invalid_argument,
                    "distribution length does not match the cubature size");
    if (grid.r1.empty() || grid.r2.empty() || grid.r3.empty())
        throw Error(ErrorKind::invalid_argument, "pose grid has an empty translation axis");
    if (grid.angle_count < 1)
        throw Error(ErrorKind::invalid_argument, "angle_count must be at least 1");
    if (std::abs(norm(grid.axis) - 1.0) > 1e-12)
        throw Error(ErrorKind::invalid_argument, "rotation axis must be a unit vector");
    for (double r3 : grid.r3)
        if (r3 < grid.contact_r3)
            throw Error(ErrorKind::invalid_argument,
                        "pose grid reaches below the contact separation", r3);

    constexpr double kTwoPi = 6.283185307179586476925286766559;

    // Pose list in fixed order: r1, then r2, then r3, then rotation angle.
    std::vector<Pose> poses;
    poses.reserve(grid.r1.size() * grid.r2.size() * grid.r3.size() *
                  static_cast<std::size_t>(grid.angle_count));
    for (double r1 : grid.r1)
        for (double r2 : grid.r2)
            for (double r3 : grid.r3)
                for (int m = 0; m < grid.angle_count; ++m) {
                    Pose p;
                    p.r = Vec3{r1, r2, r3};
                    p.axis = grid.axis;
                    p.angle = kTwoPi * static_cast<double>(m) /
                              static_cast<double>(grid.angle_count);
                    poses.push_back(p);
                }

    const int np = static_cast<int>(poses.size());
    std::vector<double> values(np, 0.0);
    std::exception_ptr failure = nullptr;

    // Poses are independent: parallelize across them. Each pose's double sum
    // stays on one thread, so values are identical for any thread count.
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < np; ++p) {
        try {
            std::vector<Vec3> posed(n);
            for (int b = 0; b < n; ++b) posed[b] = apply_pose(poses[p], c.nodes[b]);
            double sum = 0.0;
            for (int a = 0; a < n; ++a) {
                double row = 0.0;
                for (int b = 0; b < n; ++b)
                    row += eval_displaced(spec, c.nodes[a], posed[b]) *
                           (c.weights[b] * psi[b]);
                sum += c.weights[a] * phi[a] * row;
            }
            values[p] = sum;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    PoseScanResult result;
    result.grid = grid;
    result.min_I = values[0];
    result.max_I = values[0];
    result.argmin_pose = poses[0];
    result.argmax_pose = poses[0];
    bool contact_ok = true;  // vacuously true when no pose sits at contact
    for (int p = 0; p < np; ++p) {
        if (values[p] < result.min_I) {
            result.min_I = values[p];
            result.argmin_pose = poses[p];
        }
        if (values[p] > result.max_I) {
            result.max_I = values[p];
            result.argmax_pose = poses[p];
        }
        if (poses[p].r.x3 == grid.contact_r3 && !(values[p] < 0.0)) contact_ok = false;
    }
    result.contact_all_negative = contact_ok;
    result.attracting_pose_exists = result.max_I > 0.0;
    return result;
}

}  // namespace cmplchg
