#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bohr/eig.hpp"

namespace bohr {

using ParamVector = std::vector<double>;

// Rank-one Gram matrix Lambda(x) = (x_i x_j).
inline ComplexMatrix gram(const ParamVector& x) {
    if (x.empty()) throw BadParam("gram: empty vector");
    ComplexMatrix g(x.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) g(i, j) = x[i] * x[j];
    return g;
}

// D(x) = diag(x_1, ..., x_n).
inline ComplexMatrix diag_of(const ParamVector& x) {
    if (x.empty()) throw BadParam("diag_of: empty vector");
    return ComplexMatrix::diagonal(x);
}

// Encodes the question "is  sum_i diag_i |A_i|^2 - sum_k sign_k |sum_i
// coeffs_ki A_i|^2  PSD for every operator tuple (A_i)?" as a real n x n
// matrix question: the answer is yes iff coefficient_matrix() is PSD.
struct QuadraticCertificateProblem {
    struct Term {
        int sign = +1;       // +1 or -1
        ParamVector coeffs;  // length n
    };

    std::size_t n = 0;
    std::vector<Term> terms;
    ParamVector diag;

    void validate() const {
        if (n == 0) throw BadParam("QuadraticCertificateProblem: n must be >= 1");
        if (diag.size() != n)
            throw BadParam("QuadraticCertificateProblem: diag length != n");
        for (const Term& t : terms) {
            if (t.sign != 1 && t.sign != -1)
                throw BadParam("QuadraticCertificateProblem: term sign must be +1 or -1");
            if (t.coeffs.size() != n)
                throw BadParam("QuadraticCertificateProblem: term coeffs length != n");
        }
    }
};

// M = D(diag) - sum_k sign_k Lambda(coeffs_k). M PSD certifies the operator
// inequality for all tuples; both inequality directions compile into the same
// PSD question through the signs.
inline ComplexMatrix coefficient_matrix(const QuadraticCertificateProblem& p) {
    p.validate();
    ComplexMatrix m = diag_of(p.diag);
    for (const auto& term : p.terms) {
        const ComplexMatrix g = gram(term.coeffs);
        m = term.sign > 0 ? m - g : m + g;
    }
    return m;
}

struct PsdCheck {
    bool psd = false;
    double lambda_min = 0.0;
    ParamVector eigenvector; // unit eigenvector for lambda_min
};

namespace detail {

inline void require_real_symmetric(const ComplexMatrix& m, const Tolerance& tol,
                                   const char* who) {
    if (!m.square()) throw ShapeError(std::string(who) + ": matrix is not square");
    const double bound = tol.tau(max_abs_norm(m));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            if (std::abs(m(i, j).imag()) > bound || std::abs(m(j, i).imag()) > bound ||
                std::abs(m(i, j).real() - m(j, i).real()) > bound)
                throw NotHermitian(std::string(who) + ": matrix is not real symmetric");
        }
}

inline ParamVector real_unit_column(const ComplexMatrix& vectors, std::size_t col) {
    ParamVector v(vectors.rows());
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = vectors(i, col).real();
        norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
    if (norm > 0.0)
        for (double& x : v) x /= norm;
    return v;
}

} // namespace detail

// PSD test for a real symmetric matrix: psd iff lambda_min >= -tau(||M||_2).
// The failing direction carries the minimizing unit eigenvector.
inline PsdCheck psd_check(const ComplexMatrix& m, const Tolerance& tol = {}) {
    detail::require_real_symmetric(m, tol, "psd_check");
    const HermitianEig eig = herm_eig(m, tol);
    PsdCheck result;
    result.lambda_min = eig.lambda_min();
    result.psd = result.lambda_min >= -tol.tau(eig.norm2());
    // Ties among equal minimal eigenvalues resolve to the first original
    // index because the eigenvalue sort is stable.
    result.eigenvector = detail::real_unit_column(eig.vectors, m.rows() - 1);
    return result;
}

namespace detail {

inline double determinant(std::vector<double> a, std::size_t k) {
    double det = 1.0;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < k; ++row)
            if (std::abs(a[row * k + col]) > std::abs(a[pivot * k + col])) pivot = row;
        if (a[pivot * k + col] == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t j = 0; j < k; ++j) std::swap(a[pivot * k + j], a[col * k + j]);
            det = -det;
        }
        det *= a[col * k + col];
        for (std::size_t row = col + 1; row < k; ++row) {
            const double factor = a[row * k + col] / a[col * k + col];
            for (std::size_t j = col; j < k; ++j) a[row * k + j] -= factor * a[col * k + j];
        }
    }
    return det;
}

} // namespace detail

// Sylvester-style alternative to psd_check: every principal minor >= 0, with
// a size-aware slack tau * k * ||M||_2^k for the k x k minors. Enumerates all
// 2^n - 1 subsets; capped at n <= 20.
inline bool principal_minors_nonneg(const ComplexMatrix& m, const Tolerance& tol = {}) {
    detail::require_real_symmetric(m, tol, "principal_minors_nonneg");
    const std::size_t n = m.rows();
    if (n > 20) throw TooLarge("principal_minors_nonneg: n > 20");

    const double norm = norm2_hermitian(m, tol);
    const double tau = tol.tau(norm);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        const std::size_t k = idx.size();
        std::vector<double> sub(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub[i * k + j] = m(idx[i], idx[j]).real();
        const double slack = tau * static_cast<double>(k) * std::pow(std::max(norm, 1e-30), static_cast<double>(k));
        if (detail::determinant(std::move(sub), k) < -slack) return false;
    }
    return true;
}

// Loewner order A <= B: lambda_min(B - A) >= -tau(||B - A||_2).
inline bool loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b,
                        const Tolerance& tol = {}) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("loewner_leq: shape mismatch");
    const ComplexMatrix diff = b - a;
    const HermitianEig eig = herm_eig(diff, tol);
    return eig.lambda_min() >= -tol.tau(eig.norm2());
}

enum class CertificateStatus { Certified, Refuted };

struct CertificateResult {
    CertificateStatus status = CertificateStatus::Refuted;
    ComplexMatrix coeff_matrix;
    double lambda_min = 0.0;
    std::optional<ParamVector> witness; // unit eigenvector for lambda_min when Refuted

    bool certified() const { return status == CertificateStatus::Certified; }
};

// The certificate engine. Certified guarantees the operator inequality
//   sum_i diag_i |A_i|^2 - sum_k sign_k |sum_i coeffs_ki A_i|^2  >= 0
// for every operator tuple; Refuted supplies the minimizing unit eigenvector,
// which instantiated as 1x1 operators A_i = v_i realizes lambda_min exactly.
inline CertificateResult certify(const QuadraticCertificateProblem& p,
                                 const Tolerance& tol = {}) {
    CertificateResult result;
    result.coeff_matrix = coefficient_matrix(p);
    const PsdCheck check = psd_check(result.coeff_matrix, tol);
    result.lambda_min = check.lambda_min;
    if (check.psd) {
        result.status = CertificateStatus::Certified;
    } else {
        result.status = CertificateStatus::Refuted;
        result.witness = check.eigenvector;
    }
    return result;
}

// Value of the defining expression on the scalar tuple A_i = v_i:
//   sum_i diag_i v_i^2 - sum_k sign_k (sum_i coeffs_ki v_i)^2
// which equals v^T coefficient_matrix(p) v up to rounding.
inline double scalar_witness_value(const QuadraticCertificateProblem& p, const ParamVector& v) {
    p.validate();
    if (v.size() != p.n) throw ShapeError("scalar_witness_value: |v| != n");
    double value = 0.0;
    for (std::size_t i = 0; i < p.n; ++i) value += p.diag[i] * v[i] * v[i];
    for (const auto& term : p.terms) {
        double dot = 0.0;
        for (std::size_t i = 0; i < p.n; ++i) dot += term.coeffs[i] * v[i];
        value -= term.sign * dot * dot;
    }
    return value;
}

// The operator expression the certificate speaks about, evaluated on a
// concrete tuple of square operators (all the same dimension):
//   sum_i diag_i |A_i|^2 - sum_k sign_k |sum_i coeffs_ki A_i|^2.
inline ComplexMatrix operator_expression(const QuadraticCertificateProblem& p,
                                         const std::vector<ComplexMatrix>& tuple) {
    p.validate();
    if (tuple.size() != p.n) throw ShapeError("operator_expression: tuple size != n");
    const std::size_t dim = tuple.front().rows();
    for (const ComplexMatrix& a : tuple)
        if (!a.square() || a.rows() != dim)
            throw ShapeError("operator_expression: operators must be square and same size");

    ComplexMatrix expr(dim, dim);
    for (std::size_t i = 0; i < p.n; ++i)
        if (p.diag[i] != 0.0) expr = expr + p.diag[i] * abs_squared(tuple[i]);
    for (const auto& term : p.terms) {
        ComplexMatrix combo(dim, dim);
        for (std::size_t i = 0; i < p.n; ++i)
            if (term.coeffs[i] != 0.0) combo = combo + term.coeffs[i] * tuple[i];
        const ComplexMatrix sq = abs_squared(combo);
        expr = term.sign > 0 ? expr - sq : expr + sq;
    }
    return expr;
}

} // namespace bohr
