#pragma once

#include <vector>

#include "cmplchg/discrete_operator.hpp"

namespace cmplchg {

// Weighted-L2 eigensystem of the discrete operator: K W v_i = lambda_i v_i
// with sum_a w_a v_i[a] v_j[a] = delta_ij.
struct EigenSystem {
    std::vector<double> eigenvalues;                // sorted ascending
    std::vector<std::vector<double>> eigenvectors;  // eigenvectors[i] = v_i nodal values
    // max_i ||apply(op, v_i) - lambda_i v_i||_W / |lambda_i|. Note the
    // per-eigenvalue normalization: for modes whose true eigenvalue lies
    // below double-precision resolution this diagnostic is dominated by the
    // denominator and is not a convergence failure (see README).
    double residual_norm = 0.0;
};

// Dense symmetric eigensolve of B = W^(1/2) K W^(1/2) by cyclic Jacobi
// rotations (fixed row-cyclic pivot order, 100-sweep cap, off-diagonal
// Frobenius norm target 1e-12 * ||B||_F), mapped back via v = W^(-1/2) u and
// re-normalized so sum_a w_a v^2 = 1. Eigenvalues are sorted ascending (ties
// keep solver column order); each eigenvector's sign is fixed so its
// largest-magnitude component is positive. Throws Error(numerical_failure)
// carrying the achieved off-diagonal norm if the sweep cap is hit.
EigenSystem decompose(const DiscreteOperator& op);

struct DefinitenessReport {
    int negative_count = 0;
    int nonnegative_count = 0;
    double max_eigenvalue = 0.0;
    bool certified = false;  // max_eigenvalue < -tol * |min_eigenvalue|
};

DefinitenessReport check_definiteness(const EigenSystem& es, double tol);

}  // namespace cmplchg
