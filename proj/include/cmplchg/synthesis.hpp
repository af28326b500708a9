#pragma once

#include <optional>
#include <string>

#include "cmplchg/spectral.hpp"

namespace cmplchg {

struct QuadrupleMeta {
    std::string mode;  // "weak" or "strong"
    int i = 0;
    int j = 0;
    std::optional<int> k;         // strong mode only
    std::optional<double> alpha;  // strong mode only
    double lambda_i = 0.0;
    double lambda_j = 0.0;
    std::optional<double> lambda_k;
};

// The four distributions (phi, Phi, psi, Psi) forming the two complementary
// pairs (phi, Phi) and (psi, Psi), plus synthesis metadata.
struct Quadruple {
    ChargeDistribution phi, Phi, psi, Psi;
    QuadrupleMeta meta;
};

// Weak-formulation quadruple from two distinct eigenfunctions:
// phi = v_i, Phi = -v_i, psi = v_j, Psi = -v_j (negations exact). Requires
// lambda_i, lambda_j < 0 for the sign conclusions to hold. Throws
// Error(invalid_pair) when i == j, Error(indefinite_mode) on a nonnegative
// eigenvalue.
Quadruple weak_quadruple(const EigenSystem& es, int i, int j);

// Supremum of the perturbation size alpha for which both strict-positive
// conditions -lambda_i + alpha^2 lambda_k > 0 and -lambda_j + alpha^2
// lambda_k > 0 hold: sqrt(min(|lambda_i|, |lambda_j|) / |lambda_k|). All
// other inequality-system conditions hold for every alpha by sign
// inspection. Indices must be pairwise distinct, eigenvalues negative.
double alpha_max(const EigenSystem& es, int i, int j, int k);

// Strong-formulation quadruple by uniform perturbation with the third
// eigenfunction: phi~ = v_i + alpha v_k, Phi~ = -v_i + alpha v_k,
// psi~ = v_j + alpha v_k, Psi~ = -v_j + alpha v_k. With orthonormality the
// interaction values have closed forms:
//   I<phi~,Phi~> = -lambda_i + alpha^2 lambda_k   (> 0)
//   I<psi~,Psi~> = -lambda_j + alpha^2 lambda_k   (> 0)
//   I<phi~,phi~> = lambda_i + alpha^2 lambda_k    (< 0; lambda_j likewise)
//   all four cross-pair terms = alpha^2 lambda_k  (< 0)
// Default alpha = alpha_max/2; an explicit alpha must lie in (0, alpha_max)
// or Error(inadmissible_alpha) is thrown.
Quadruple strong_quadruple(const EigenSystem& es, int i, int j, int k,
                           std::optional<double> alpha = std::nullopt);

}  // namespace cmplchg
