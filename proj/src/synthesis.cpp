#include "cmplchg/synthesis.hpp"

#include <cmath>
#include <sstream>

#include "cmplchg/errors.hpp"

namespace cmplchg {

namespace {

void check_index(const EigenSystem& es, int i) {
    if (i < 0 || i >= static_cast<int>(es.eigenvalues.size()))
        throw Error(ErrorKind::invalid_argument,
                    "eigenfunction index " + std::to_string(i) + " is out of range");
}

void require_negative(const EigenSystem& es, int i) {
    if (!(es.eigenvalues[i] < 0.0)) {
        std::ostringstream msg;
        msg << "eigenvalue " << i << " (" << es.eigenvalues[i]
            << ") is nonnegative; the sign construction requires negative modes";
        throw Error(ErrorKind::indefinite_mode, msg.str(), es.eigenvalues[i]);
    }
}

ChargeDistribution negated(const ChargeDistribution& v) {
    ChargeDistribution out(v.size());
    for (std::size_t a = 0; a < v.size(); ++a) out[a] = -v[a];
    return out;
}

ChargeDistribution axpy(const ChargeDistribution& v, double alpha, const ChargeDistribution& w) {
    ChargeDistribution out(v.size());
    for (std::size_t a = 0; a < v.size(); ++a) out[a] = v[a] + alpha * w[a];
    return out;
}

}  // namespace

Quadruple weak_quadruple(const EigenSystem& es, int i, int j) {
    check_index(es, i);
    check_index(es, j);
    if (i == j)
        throw Error(ErrorKind::invalid_pair,
                    "invalid pair: the weak quadruple requires two distinct eigenfunction "
                    "indices (i != j)");
    require_negative(es, i);
    require_negative(es, j);

    Quadruple q;
    q.phi = es.eigenvectors[i];
    q.Phi = negated(q.phi);
    q.psi = es.eigenvectors[j];
    q.Psi = negated(q.psi);
    q.meta.mode = "weak";
    q.meta.i = i;
    q.meta.j = j;
    q.meta.lambda_i = es.eigenvalues[i];
    q.meta.lambda_j = es.eigenvalues[j];
    return q;
}

double alpha_max(const EigenSystem& es, int i, int j, int k) {
    check_index(es, i);
    check_index(es, j);
    check_index(es, k);
    if (i == j || k == i || k == j)
        throw Error(ErrorKind::invalid_pair,
                    "invalid pair: indices i, j, k must be pairwise distinct");
    require_negative(es, i);
    require_negative(es, j);
    require_negative(es, k);
    const double li = std::abs(es.eigenvalues[i]);
    const double lj = std::abs(es.eigenvalues[j]);
    const double lk = std::abs(es.eigenvalues[k]);
    return std::sqrt(std::min(li, lj) / lk);
}

Quadruple strong_quadruple(const EigenSystem& es, int i, int j, int k,
                           std::optional<double> alpha) {
    const double amax = alpha_max(es, i, j, k);  // validates indices and signs
    const double a = alpha.value_or(0.5 * amax);
    if (!(a > 0.0) || !(a < amax)) {
        std::ostringstream msg;
        msg << "alpha = " << a << " is inadmissible; it must lie in (0, " << amax << ")";
        throw Error(ErrorKind::inadmissible_alpha, msg.str(), amax);
    }

    const auto& vi = es.eigenvectors[i];
    const auto& vj = es.eigenvectors[j];
    const auto& vk = es.eigenvectors[k];

    Quadruple q;
    q.phi = axpy(vi, a, vk);
    q.Phi = axpy(negated(vi), a, vk);
    q.psi = axpy(vj, a, vk);
    q.Psi = axpy(negated(vj), a, vk);
    q.meta.mode = "strong";
    q.meta.i = i;
    q.meta.j = j;
    q.meta.k = k;
    q.meta.alpha = a;
    q.meta.lambda_i = es.eigenvalues[i];
    q.meta.lambda_j = es.eigenvalues[j];
    q.meta.lambda_k = es.eigenvalues[k];
    return q;
}

}  // namespace cmplchg
