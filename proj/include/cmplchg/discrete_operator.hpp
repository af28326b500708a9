#pragma once

#include <cstddef>
#include <vector>

#include "cmplchg/cubature.hpp"
#include "cmplchg/kernel.hpp"

namespace cmplchg {

// Nodal charge-density samples, one per cubature node.
using ChargeDistribution = std::vector<double>;

// Dense row-major square matrix. Storage only; algebra lives with the users.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0.0) {}

    int n() const { return n_; }
    double& at(int a, int b) { return data_[static_cast<std::size_t>(a) * n_ + b]; }
    double at(int a, int b) const { return data_[static_cast<std::size_t>(a) * n_ + b]; }
    double* row(int a) { return data_.data() + static_cast<std::size_t>(a) * n_; }
    const double* row(int a) const { return data_.data() + static_cast<std::size_t>(a) * n_; }
    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    int n_ = 0;
    std::vector<double> data_;
};

// Nystrom discretization of the pair-interaction operator: the symmetrized
// kernel matrix K plus the quadrature weights W (kept outside K so the
// weighted-L2 structure stays explicit). Immutable after assembly.
struct DiscreteOperator {
    Matrix K;                     // exactly symmetric kernel matrix
    std::vector<double> weights;  // diagonal of W
    double asymmetry_norm = 0.0;  // max-abs entry of (K_raw - K_raw^T)/2
    KernelSpec spec;
    ShapeMeta cubature_meta;

    int size() const { return K.n(); }
};

// K_raw[a][b] = eval(spec, node_a, node_b), then K = (K_raw + K_raw^T)/2.
// The raw asymmetry is recorded as a discretization diagnostic; it is
// exactly zero for smooth_gaussian. Rows are assembled in parallel.
DiscreteOperator assemble(const Cubature& c, const KernelSpec& spec);

// Pair interaction force I<phi,psi> = sum_ab w_a phi_a K[a][b] w_b psi_b,
// evaluated as one matrix-vector product and one dot product. The argument
// order is canonicalized first so the floating-point result is exactly
// symmetric in (phi, psi).
double pair_force(const DiscreteOperator& op, const ChargeDistribution& phi,
                  const ChargeDistribution& psi);

// Operator action (R psi)_a = sum_b K[a][b] w_b psi_b.
ChargeDistribution apply(const DiscreteOperator& op, const ChargeDistribution& psi);

}  // namespace cmplchg
