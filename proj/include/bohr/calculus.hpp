#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "bohr/eig.hpp"

namespace bohr {

// Scalar functions admitted into the spectral calculus. Admissibility for the
// various inequality checks is decided structurally from (kind, parameters),
// never by numeric convexity probing.
struct ScalarFunction {
    enum class Kind { AbsPower, Power, Polynomial };

    Kind kind = Kind::Power;
    double r = 1.0;                  // exponent for AbsPower / Power
    std::vector<double> coeffs;      // c0 + c1 t + ... for Polynomial

    static ScalarFunction abs_power(double r) { return {Kind::AbsPower, r, {}}; }
    static ScalarFunction power(double r) { return {Kind::Power, r, {}}; }
    static ScalarFunction polynomial(std::vector<double> coeffs) {
        if (coeffs.empty()) throw BadParam("ScalarFunction: empty coefficient list");
        return {Kind::Polynomial, 0.0, std::move(coeffs)};
    }

    double operator()(double t) const {
        switch (kind) {
        case Kind::AbsPower: return std::pow(std::abs(t), r);
        case Kind::Power: return std::pow(t, r);
        case Kind::Polynomial: {
            double acc = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
            return acc;
        }
        }
        return 0.0;
    }

    bool is_integer_exponent() const {
        return r == std::floor(r) && std::abs(r) < 1e15;
    }
};

// f(M) = U diag(f(lambda_i)) U* for Hermitian M.
//
// Domain policy: Power(r) with r < 0 requires lambda_min >= eps_pos;
// non-integer r >= 0 clamps eigenvalues in [-tau, 0) to 0 and rejects anything
// below -tau. AbsPower(r) with r < 0 requires min |lambda| >= eps_pos.
inline ComplexMatrix func_calculus(const ComplexMatrix& m, const ScalarFunction& f,
                                   const Tolerance& tol = {}) {
    HermitianEig eig = herm_eig(m, tol);
    std::vector<double> lam = eig.eigenvalues;
    const double tau = tol.tau(eig.norm2());

    if (f.kind == ScalarFunction::Kind::Power && f.r < 0.0) {
        if (eig.lambda_min() < tol.eps_pos())
            throw DomainError("func_calculus: Power(" + std::to_string(f.r) +
                              ") needs a strictly positive spectrum; lambda_min = " +
                              std::to_string(eig.lambda_min()));
    } else if (f.kind == ScalarFunction::Kind::Power && !f.is_integer_exponent()) {
        if (eig.lambda_min() < -tau)
            throw DomainError("func_calculus: fractional power on eigenvalue " +
                              std::to_string(eig.lambda_min()) + " below -tau");
        for (double& l : lam) l = std::max(l, 0.0);
    } else if (f.kind == ScalarFunction::Kind::AbsPower && f.r < 0.0) {
        for (double l : lam)
            if (std::abs(l) < tol.eps_pos())
                throw DomainError("func_calculus: AbsPower(" + std::to_string(f.r) +
                                  ") needs an invertible spectrum");
    }

    const std::size_t n = m.rows();
    ComplexMatrix result(n, n);
    // U diag(f(lambda)) U* accumulated column by column.
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(lam[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx scaled = fk * eig.vectors(i, k);
            for (std::size_t j = 0; j < n; ++j)
                result(i, j) += scaled * std::conj(eig.vectors(j, k));
        }
    }
    return hermitian_part(result);
}

// Operator absolute value |C| = (C*C)^{1/2}, the unique PSD square root of
// C*C. Rectangular input gives a cols x cols result.
inline ComplexMatrix abs_op(const ComplexMatrix& c, const Tolerance& tol = {}) {
    HermitianEig eig = herm_eig(abs_squared(c), tol);
    const std::size_t n = c.cols();
    ComplexMatrix result(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double sk = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
        if (sk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx scaled = sk * eig.vectors(i, k);
            for (std::size_t j = 0; j < n; ++j)
                result(i, j) += scaled * std::conj(eig.vectors(j, k));
        }
    }
    return hermitian_part(result);
}

// |C|^r = func_calculus(abs_op(C), Power(r)).
inline ComplexMatrix abs_power_op(const ComplexMatrix& c, double r, const Tolerance& tol = {}) {
    return func_calculus(abs_op(c, tol), ScalarFunction::power(r), tol);
}

} // namespace bohr
