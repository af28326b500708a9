#include "cmplchg/discrete_operator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>

#include "cmplchg/errors.hpp"

namespace cmplchg {

DiscreteOperator assemble(const Cubature& c, const KernelSpec& spec) {
    validate(spec);
    const int n = c.size();
    if (n == 0) throw Error(ErrorKind::invalid_argument, "cannot assemble on an empty cubature");

    // Raw kernel matrix, rows in parallel (independent entries, so the result
    // is identical for any thread count). eval can throw for an unsoftened
    // Coulomb kernel; exceptions cannot cross the parallel region, so the
    // first one is captured and rethrown after.
    Matrix raw(n);
    std::exception_ptr error = nullptr;
    std::atomic<bool> failed{false};
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            double* row = raw.row(a);
            for (int b = 0; b < n; ++b) row[b] = eval(spec, c.nodes[a], c.nodes[b]);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    }
    if (error) std::rethrow_exception(error);

    DiscreteOperator op;
    op.K = Matrix(n);
    op.weights = c.weights;
    op.spec = spec;
    op.cubature_meta = c.meta;

    // Symmetrize into both triangles from one computation per unordered pair,
    // so K is symmetric bitwise. max() is exact and order-independent, which
    // keeps the reduction deterministic.
    double asym = 0.0;
#pragma omp parallel for schedule(static) reduction(max : asym)
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            const double kab = raw.at(a, b);
            const double kba = raw.at(b, a);
            const double sym = 0.5 * (kab + kba);
            op.K.at(a, b) = sym;
            op.K.at(b, a) = sym;
            asym = std::max(asym, std::abs(0.5 * (kab - kba)));
        }
    }
    op.asymmetry_norm = asym;
    return op;
}

double pair_force(const DiscreteOperator& op, const ChargeDistribution& phi,
                  const ChargeDistribution& psi) {
    const int n = op.size();
    if (static_cast<int>(phi.size()) != n || static_cast<int>(psi.size()) != n)
        throw Error(ErrorKind::invalid_argument,
                    "distribution length does not match the operator size");

    // The bilinear form is symmetric (K is); canonicalizing the argument
    // order makes the floating-point evaluation symmetric as well.
    const ChargeDistribution* f = &phi;
    const ChargeDistribution* g = &psi;
    if (std::lexicographical_compare(g->begin(), g->end(), f->begin(), f->end()))
        std::swap(f, g);

    // One matrix-vector product (rows in parallel, each row a serial dot
    // product) ...
    std::vector<double> wg(n), t(n);
    for (int b = 0; b < n; ++b) wg[b] = op.weights[b] * (*g)[b];
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a) {
        const double* row = op.K.row(a);
        double acc = 0.0;
        for (int b = 0; b < n; ++b) acc += row[b] * wg[b];
        t[a] = acc;
    }
    // ... and one serial dot product, so the result is thread-count
    // independent.
    double I = 0.0;
    for (int a = 0; a < n; ++a) I += op.weights[a] * (*f)[a] * t[a];
    return I;
}

ChargeDistribution apply(const DiscreteOperator& op, const ChargeDistribution& psi) {
    const int n = op.size();
    if (static_cast<int>(psi.size()) != n)
        throw Error(ErrorKind::invalid_argument,
                    "distribution length does not match the operator size");

    std::vector<double> wpsi(n);
    for (int b = 0; b < n; ++b) wpsi[b] = op.weights[b] * psi[b];
    ChargeDistribution out(n);
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a) {
        const double* row = op.K.row(a);
        double acc = 0.0;
        for (int b = 0; b < n; ++b) acc += row[b] * wpsi[b];
        out[a] = acc;
    }
    return out;
}

}  // namespace cmplchg
