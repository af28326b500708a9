#include "cmplchg/reference.hpp"

#include "cmplchg/errors.hpp"

namespace cmplchg::reference {

DiscreteOperator assemble_serial(const Cubature& c, const KernelSpec& spec) {
    validate(spec);
    const int n = c.size();
    if (n == 0) throw Error(ErrorKind::invalid_argument, "cannot assemble on an empty cubature");

    Matrix raw(n);
    for (int a = 0; a < n; ++a) {
        double* row = raw.row(a);
        for (int b = 0; b < n; ++b) row[b] = eval(spec, c.nodes[a], c.nodes[b]);
    }

    DiscreteOperator op;
    op.K = Matrix(n);
    op.weights = c.weights;
    op.spec = spec;
    op.cubature_meta = c.meta;
    double asym = 0.0;
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

double pair_force_reference(const Cubature& c, const KernelSpec& spec,
                            const ChargeDistribution& phi, const ChargeDistribution& psi) {
    const int n = c.size();
    if (static_cast<int>(phi.size()) != n || static_cast<int>(psi.size()) != n)
        throw Error(ErrorKind::invalid_argument,
                    "distribution length does not match the cubature size");
    double sum = 0.0;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const double k =
                0.5 * (eval(spec, c.nodes[a], c.nodes[b]) + eval(spec, c.nodes[b], c.nodes[a]));
            sum += c.weights[a] * phi[a] * k * c.weights[b] * psi[b];
        }
    }
    return sum;
}

double posed_pair_force_serial(const Cubature& c, const KernelSpec& spec,
                               const ChargeDistribution& phi, const ChargeDistribution& psi,
                               const Pose& pose) {
    const int n = c.size();
    if (static_cast<int>(phi.size()) != n || static_cast<int>(psi.size()) != n)
        throw Error(ErrorKind::invalid_argument,
                    "distribution length does not match the cubature size");
    std::vector<Vec3> posed(n);
    for (int b = 0; b < n; ++b) posed[b] = apply_pose(pose, c.nodes[b]);
    double sum = 0.0;
    for (int a = 0; a < n; ++a) {
        double row = 0.0;
        for (int b = 0; b < n; ++b)
            row += eval_displaced(spec, c.nodes[a], posed[b]) * (c.weights[b] * psi[b]);
        sum += c.weights[a] * phi[a] * row;
    }
    return sum;
}

}  // namespace cmplchg::reference
