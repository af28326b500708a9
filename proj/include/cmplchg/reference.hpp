#pragma once

// Serial reference implementations: plain double loops over node pairs with
// no matrix storage and no parallelism. They exist as independent code paths
// for tests and for the benchmark comparing them against the OpenMP kernels.

#include "cmplchg/cubature.hpp"
#include "cmplchg/discrete_operator.hpp"

namespace cmplchg::reference {

// Serial twin of assemble(); produces bit-identical operators.
DiscreteOperator assemble_serial(const Cubature& c, const KernelSpec& spec);

// I<phi,psi> via an explicit double loop calling eval directly with inline
// symmetrization (eval(a,b) + eval(b,a))/2 — no matrix is formed.
double pair_force_reference(const Cubature& c, const KernelSpec& spec,
                            const ChargeDistribution& phi, const ChargeDistribution& psi);

// Posed pair force at a single pose, serial double loop.
double posed_pair_force_serial(const Cubature& c, const KernelSpec& spec,
                               const ChargeDistribution& phi, const ChargeDistribution& psi,
                               const Pose& pose);

}  // namespace cmplchg::reference
