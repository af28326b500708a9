// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: operator assembly, the pair force, and the pose scan.
// Exits nonzero when a parallel result disagrees with its reference.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cmplchg/cubature.hpp"
#include "cmplchg/discrete_operator.hpp"
#include "cmplchg/kernel.hpp"
#include "cmplchg/reference.hpp"
#include "cmplchg/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Deterministic uniform doubles in [-1, 1); avoids the implementation-defined
// std::uniform_real_distribution.
std::vector<double> random_distribution(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    for (int a = 0; a < n; ++a)
        v[a] = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    return v;
}

struct Outcome {
    bool ok = true;

    void check(const char* what, bool condition) {
        std::printf("  %-34s %s\n", what, condition ? "ok" : "MISMATCH");
        ok = ok && condition;
    }
};

}  // namespace

int main(int argc, char** argv) {
    bool smoke = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--smoke") smoke = true;

    const int nr = smoke ? 2 : 4;
    const int ntheta = smoke ? 4 : 16;
    const int nz = smoke ? 3 : 16;

    cmplchg::KernelSpec spec;
    spec.kind = cmplchg::KernelKind::smooth_gaussian;
    spec.sigma = 0.5;
    spec.d = 1.2;

    const cmplchg::Cubature c = cmplchg::build_cylinder(1.0, 1.0, nr, ntheta, nz);
    const int n = c.size();
#ifdef _OPENMP
    std::printf("n = %d nodes, %d OpenMP threads\n", n, omp_get_max_threads());
#else
    std::printf("n = %d nodes, OpenMP disabled (serial build)\n", n);
#endif

    Outcome outcome;

    // --- assembly ---------------------------------------------------------
    auto t0 = Clock::now();
    const cmplchg::DiscreteOperator op = cmplchg::assemble(c, spec);
    const double t_par = seconds_since(t0);

    t0 = Clock::now();
    const cmplchg::DiscreteOperator op_ref = cmplchg::reference::assemble_serial(c, spec);
    const double t_ser = seconds_since(t0);

    std::printf("assemble      parallel %8.4f s   serial %8.4f s   speedup %5.2fx\n", t_par,
                t_ser, t_ser / t_par);
    outcome.check("operator matrices bit-identical", op.K.data() == op_ref.K.data());

    // --- pair force ---------------------------------------------------------
    const auto phi = random_distribution(n, 11);
    const auto psi = random_distribution(n, 23);
    const int reps = smoke ? 3 : 200;

    double acc = 0.0;
    t0 = Clock::now();
    for (int r = 0; r < reps; ++r) acc += cmplchg::pair_force(op, phi, psi);
    const double tf_par = seconds_since(t0) / reps;

    double acc_ref = 0.0;
    t0 = Clock::now();
    for (int r = 0; r < reps; ++r)
        acc_ref += cmplchg::reference::pair_force_reference(c, spec, phi, psi);
    const double tf_ser = seconds_since(t0) / reps;

    const double i_par = acc / reps;
    const double i_ref = acc_ref / reps;
    std::printf("pair_force    parallel %8.6f s   serial %8.6f s   speedup %5.2fx\n", tf_par,
                tf_ser, tf_ser / tf_par);
    outcome.check("pair force matches reference",
                  std::abs(i_par - i_ref) <= 1e-12 * std::abs(i_ref));

    // --- pose scan -----------------------------------------------------------
    cmplchg::PoseGrid grid;
    grid.r3 = smoke ? std::vector<double>{1.2, 1.6} : std::vector<double>{1.2, 1.4, 1.6, 1.8};
    grid.angle_count = smoke ? 4 : 16;
    grid.contact_r3 = grid.r3.front();

    t0 = Clock::now();
    const cmplchg::PoseScanResult scan = cmplchg::pose_scan(c, spec, phi, psi, grid);
    const double ts_par = seconds_since(t0);

    double ref_min = 0.0, ref_max = 0.0;
    bool first = true;
    t0 = Clock::now();
    for (double r3 : grid.r3)
        for (int m = 0; m < grid.angle_count; ++m) {
            cmplchg::Pose p;
            p.r = cmplchg::Vec3{0.0, 0.0, r3};
            p.angle = 2.0 * 3.14159265358979323846 * m / grid.angle_count;
            const double v = cmplchg::reference::posed_pair_force_serial(c, spec, phi, psi, p);
            if (first || v < ref_min) ref_min = v;
            if (first || v > ref_max) ref_max = v;
            first = false;
        }
    const double ts_ser = seconds_since(t0);

    std::printf("pose_scan     parallel %8.4f s   serial %8.4f s   speedup %5.2fx\n", ts_par,
                ts_ser, ts_ser / ts_par);
    outcome.check("scan extrema bit-identical",
                  scan.min_I == ref_min && scan.max_I == ref_max);

    std::printf("%s\n", outcome.ok ? "all comparisons passed" : "comparison FAILED");
    return outcome.ok ? 0 : 1;
}
