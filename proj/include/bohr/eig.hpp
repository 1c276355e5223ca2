#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bohr/matrix.hpp"
#include "bohr/tolerance.hpp"

namespace bohr {

// Eigendecomposition of a Hermitian matrix: M = U diag(lambda) U* with the
// eigenvalues sorted descending and U unitary (columns are eigenvectors).
struct HermitianEig {
    std::vector<double> eigenvalues; // descending, ties keep original order
    ComplexMatrix vectors;           // unitary, column k pairs with eigenvalues[k]

    double lambda_min() const { return eigenvalues.back(); }
    double lambda_max() const { return eigenvalues.front(); }
    // Spectral norm of the decomposed matrix.
    double norm2() const {
        return std::max(std::abs(eigenvalues.front()), std::abs(eigenvalues.back()));
    }
};

namespace detail {

inline double off_diagonal_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace detail

// Cyclic complex Jacobi rotations. Convergence: off-diagonal Frobenius norm
// <= 1e-13 * ||M||_F; hard cap 50 sweeps. Adequate for the dimensions this
// library targets (<= 32).
inline HermitianEig herm_eig(const ComplexMatrix& m, const Tolerance& tol = {}) {
    if (!m.square()) throw ShapeError("herm_eig: matrix is not square");
    const double defect = hermitian_defect(m);
    if (defect > tol.tau(max_abs_norm(m)))
        throw NotHermitian("herm_eig: asymmetry " + std::to_string(defect) + " beyond tolerance");

    const std::size_t n = m.rows();
    ComplexMatrix a = hermitian_part(m);
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double fro = frobenius_norm(a);
    const double stop = 1e-13 * fro;
    constexpr int max_sweeps = 50;

    bool converged = detail::off_diagonal_frobenius(a) <= stop;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx gamma = a(p, q);
                const double g = std::abs(gamma);
                if (g == 0.0) continue;

                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double tau = (beta - alpha) / (2.0 * g);
                double t;
                if (std::isinf(tau)) {
                    t = 0.0;
                } else {
                    const double sgn = tau >= 0.0 ? 1.0 : -1.0;
                    t = sgn / (std::abs(tau) + std::hypot(1.0, tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx u = gamma / g; // unit phase of the pivot entry

                // Right-multiply columns p,q of A and V by the rotation.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(u) * akq;
                    a(k, q) = s * u * akp + c * akq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * std::conj(u) * vkq;
                    v(k, q) = s * u * vkp + c * vkq;
                }
                // Left-multiply rows p,q of A by the rotation's adjoint.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * u * aqk;
                    a(q, k) = s * std::conj(u) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
        converged = detail::off_diagonal_frobenius(a) <= stop;
    }
    if (!converged)
        throw NoConvergence("herm_eig: Jacobi sweep cap (50) exceeded");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    HermitianEig result;
    result.eigenvalues.resize(n);
    ComplexMatrix sorted(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        result.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) sorted(i, k) = v(i, order[k]);
    }
    result.vectors = std::move(sorted);
    return result;
}

// (lambda_min, lambda_max): the tightest m, M with m I <= A <= M I.
inline std::pair<double, double> spectral_bounds(const ComplexMatrix& m,
                                                 const Tolerance& tol = {}) {
    const HermitianEig eig = herm_eig(m, tol);
    return {eig.lambda_min(), eig.lambda_max()};
}

// Spectral norm of a Hermitian matrix.
inline double norm2_hermitian(const ComplexMatrix& m, const Tolerance& tol = {}) {
    return herm_eig(m, tol).norm2();
}

// Singular values of an arbitrary matrix, descending, clamped to >= 0.
// Computed as the eigenvalues of |C| = (C*C)^{1/2}.
inline std::vector<double> singular_values(const ComplexMatrix& c, const Tolerance& tol = {}) {
    const HermitianEig eig = herm_eig(abs_squared(c), tol);
    std::vector<double> sv(eig.eigenvalues.size());
    for (std::size_t k = 0; k < sv.size(); ++k)
        sv[k] = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
    return sv; // descending since sqrt is monotone
}

// Spectral norm of an arbitrary matrix.
inline double norm2(const ComplexMatrix& m, const Tolerance& tol = {}) {
    return singular_values(m, tol).front();
}

// Ky Fan k-norm: sum of the k largest singular values. Dominance over every k
// decides all unitarily invariant norm comparisons at once.
inline double ky_fan_norm(const std::vector<double>& singular, std::size_t k) {
    double s = 0.0;
    for (std::size_t i = 0; i < k && i < singular.size(); ++i) s += singular[i];
    return s;
}

} // namespace bohr
