#pragma once

#include <array>
#include <string>
#include <vector>

#include "cmplchg/discrete_operator.hpp"
#include "cmplchg/synthesis.hpp"

namespace cmplchg {

// 4x4 symmetric matrix of pair_force values over the ordered tuple
// (phi, Phi, psi, Psi). Entries are computed once per unordered pair and
// mirrored, so the matrix is symmetric bitwise.
using InteractionMatrix = std::array<std::array<double, 4>, 4>;

InteractionMatrix interaction_matrix(const DiscreteOperator& op, const Quadruple& q);

enum class Mode { weak, strong };

Mode parse_mode(const std::string& name);
std::string to_string(Mode mode);

struct Condition {
    std::string name;               // e.g. "I<phi,Phi>"
    double value = 0.0;
    std::string required_relation;  // "> tol", "< -tol", or "<= tol"
    bool passed = false;
};

struct VerificationReport {
    InteractionMatrix matrix{};
    Mode mode = Mode::weak;
    double tol = 0.0;
    std::vector<Condition> conditions;
    bool overall_pass = false;
    // Signed value of the smallest-|value| condition among the strict ones
    // (both positives in weak mode; all ten in strong mode).
    double margin = 0.0;
};

// Evaluates the ten distinct complementarity conditions: the two positives
// {I<phi,Phi>, I<psi,Psi>} require "> tol" in both modes; the eight
// negatives {I<phi,phi>, I<Phi,Phi>, I<psi,psi>, I<Psi,Psi>, I<phi,psi>,
// I<phi,Psi>, I<Phi,psi>, I<Phi,Psi>} require "< -tol" in strong mode and
// "<= tol" in weak mode.
VerificationReport check_system(const InteractionMatrix& m, Mode mode, double tol);

// Default tolerance: 1e-10 * max|eigenvalue| when eigen data is available,
// else 1e-12 * max|matrix entry|.
double default_tol(const EigenSystem& es);
double default_tol(const InteractionMatrix& m);

struct PoseGrid {
    std::vector<double> r1{0.0};
    std::vector<double> r2{0.0};
    std::vector<double> r3;
    Vec3 axis{0.0, 0.0, 1.0};
    int angle_count = 1;     // rotations 2*pi*m/angle_count, m = 0..angle_count-1
    double contact_r3 = 0.0; // minimum admissible axial separation
};

struct PoseScanResult {
    PoseGrid grid;
    double min_I = 0.0;
    double max_I = 0.0;
    Pose argmin_pose, argmax_pose;
    // max of I over poses with r3 == contact_r3 is negative (vacuously true
    // when the grid holds no contact pose).
    bool contact_all_negative = false;
    bool attracting_pose_exists = false;  // max of I over all poses is positive
};

// Exhaustive scan of the posed pair force
//   I(r,S) = sum_ab w_a w_b R(x_a - r - S x_b) phi_a psi_b
// over the grid r1 x r2 x r3 x angles. The pose supplies the full
// displacement, so the kernel's separation parameter d plays no role here.
// Poses are evaluated in parallel; each pose's double sum is serial, so
// results do not depend on the thread count. Requires every r3 value
// >= contact_r3 and a nonempty grid.
PoseScanResult pose_scan(const Cubature& c, const KernelSpec& spec,
                         const ChargeDistribution& phi, const ChargeDistribution& psi,
                         const PoseGrid& grid);

}  // namespace cmplchg
