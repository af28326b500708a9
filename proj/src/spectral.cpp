#include "cmplchg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cmplchg/errors.hpp"

namespace cmplchg {

namespace {

double frobenius_norm(const Matrix& A) {
    double sum = 0.0;
    for (double x : A.data()) sum += x * x;
    return std::sqrt(sum);
}

// Off-diagonal Frobenius norm by direct summation of the off-diagonal
// squares. (The shortcut sqrt(||A||_F^2 - sum(diag^2)) cancels
// catastrophically once the iteration converges and floors near
// sqrt(eps) * ||A||, masking convergence.)
double off_diagonal_norm(const Matrix& A) {
    const int n = A.n();
    double sum = 0.0;
    for (int p = 0; p < n; ++p) {
        const double* row = A.row(p);
        for (int q = 0; q < n; ++q)
            if (q != p) sum += row[q] * row[q];
    }
    return std::sqrt(sum);
}

constexpr int kMaxSweeps = 100;
constexpr double kOffTolFactor = 1e-12;
// Extra sweeps past the required threshold: convergence is quadratic by
// then, so two sweeps push the off-diagonal mass to the rounding floor and
// keep near-zero tail eigenvalues trustworthy.
constexpr int kPolishSweeps = 2;

// Cyclic Jacobi diagonalization of a symmetric matrix, in place; eigenvector
// columns accumulate in V. The pivot order is a fixed row-cyclic sweep and
// the inner row/column updates are elementwise independent, so parallelizing
// them keeps results bit-identical for any thread count. Throws
// Error(numerical_failure) with the achieved off-diagonal norm if the sweep
// cap is hit.
void jacobi_eigensymm(Matrix& A, Matrix& V) {
    const int n = A.n();
    V = Matrix(n);
    for (int k = 0; k < n; ++k) V.at(k, k) = 1.0;

    const auto rotate_sweep = [&] {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A.at(p, q);
                if (apq == 0.0) continue;
                const double app = A.at(p, p);
                const double aqq = A.at(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e8) {
                    // Asymptotic root of t^2 + 2 t theta - 1 = 0; avoids
                    // overflow in theta^2 for tiny pivots.
                    t = 1.0 / (2.0 * theta);
                } else {
                    const double sgn = theta >= 0.0 ? 1.0 : -1.0;
                    t = sgn / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

#pragma omp parallel for schedule(static) if (n >= 192)
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = A.at(k, p);
                    const double akq = A.at(k, q);
                    const double nkp = c * akp - s * akq;
                    const double nkq = s * akp + c * akq;
                    A.at(k, p) = nkp;
                    A.at(p, k) = nkp;
                    A.at(k, q) = nkq;
                    A.at(q, k) = nkq;
                }
                A.at(p, p) = app - t * apq;
                A.at(q, q) = aqq + t * apq;
                A.at(p, q) = 0.0;
                A.at(q, p) = 0.0;

#pragma omp parallel for schedule(static) if (n >= 192)
                for (int k = 0; k < n; ++k) {
                    const double vkp = V.at(k, p);
                    const double vkq = V.at(k, q);
                    V.at(k, p) = c * vkp - s * vkq;
                    V.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    };

    const double threshold = kOffTolFactor * frobenius_norm(A);
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const double off = off_diagonal_norm(A);
        if (off == 0.0 || off < threshold) {
            converged = true;
            break;
        }
        rotate_sweep();
    }
    if (!converged) {
        const double off = off_diagonal_norm(A);
        if (!(off == 0.0 || off < threshold)) {
            std::ostringstream msg;
            msg << "eigensolver did not converge within " << kMaxSweeps
                << " sweeps (achieved off-diagonal norm " << off << ", target " << threshold
                << ")";
            throw Error(ErrorKind::numerical_failure, msg.str(), off);
        }
    }
    for (int extra = 0; extra < kPolishSweeps; ++extra) rotate_sweep();
}

}  // namespace

EigenSystem decompose(const DiscreteOperator& op) {
    const int n = op.size();
    for (double w : op.weights)
        if (!(w > 0.0))
            throw Error(ErrorKind::invalid_argument, "decomposition requires positive weights");

    // Similarity transform to the weighted-L2 symmetric form
    // B = W^(1/2) K W^(1/2); B and K W share eigenvalues.
    std::vector<double> sw(n);
    for (int a = 0; a < n; ++a) sw[a] = std::sqrt(op.weights[a]);
    Matrix B(n);
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) B.at(a, b) = sw[a] * op.K.at(a, b) * sw[b];

    Matrix V;
    jacobi_eigensymm(B, V);

    // Ascending eigenvalue order; ties keep solver column order.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return B.at(a, a) < B.at(b, b); });

    EigenSystem es;
    es.eigenvalues.resize(n);
    es.eigenvectors.assign(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        const int col = order[i];
        es.eigenvalues[i] = B.at(col, col);
        auto& v = es.eigenvectors[i];
        // Map back to nodal values and renormalize in the weighted norm.
        for (int a = 0; a < n; ++a) v[a] = V.at(a, col) / sw[a];
        double nrm2 = 0.0;
        for (int a = 0; a < n; ++a) nrm2 += op.weights[a] * v[a] * v[a];
        const double inv = 1.0 / std::sqrt(nrm2);
        for (double& x : v) x *= inv;
        // Sign convention: the largest-magnitude component is positive.
        int imax = 0;
        for (int a = 1; a < n; ++a)
            if (std::abs(v[a]) > std::abs(v[imax])) imax = a;
        if (v[imax] < 0.0)
            for (double& x : v) x = -x;
    }

    // Per-eigenpair residuals in the weighted norm.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const ChargeDistribution r = cmplchg::apply(op, es.eigenvectors[i]);
        double acc = 0.0;
        for (int a = 0; a < n; ++a) {
            const double diff = r[a] - es.eigenvalues[i] * es.eigenvectors[i][a];
            acc += op.weights[a] * diff * diff;
        }
        const double resid = std::sqrt(acc);
        const double denom = std::abs(es.eigenvalues[i]);
        const double rel = denom > 0.0
                               ? resid / denom
                               : (resid == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        worst = std::max(worst, rel);
    }
    es.residual_norm = worst;
    return es;
}

DefinitenessReport check_definiteness(const EigenSystem& es, double tol) {
    DefinitenessReport r;
    for (double l : es.eigenvalues) {
        if (l < 0.0)
            ++r.negative_count;
        else
            ++r.nonnegative_count;
    }
    r.max_eigenvalue = es.eigenvalues.back();
    r.certified = r.max_eigenvalue < -tol * std::abs(es.eigenvalues.front());
    return r;
}

}  // namespace cmplchg
