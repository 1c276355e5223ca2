#pragma once

#include <string>
#include <vector>

#include "bohr/jensen.hpp"

namespace bohr {

// Real spectrum sorted descending.
using SpectrumVector = std::vector<double>;

inline std::vector<double> partial_sums(const SpectrumVector& s) {
    std::vector<double> sums(s.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        acc += s[i];
        sums[i] = acc;
    }
    return sums;
}

// Weak majorization x <_w y: every descending prefix sum of x is <= the
// corresponding prefix sum of y (within tolerance).
inline bool weak_major_leq(const SpectrumVector& x, const SpectrumVector& y,
                           const Tolerance& tol = {}) {
    if (x.size() != y.size()) throw ShapeError("weak_major_leq: length mismatch");
    double px = 0.0, py = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        px += x[k];
        py += y[k];
        if (px > py + tol.tau(std::max(std::abs(px), std::abs(py)))) return false;
    }
    return true;
}

// Instance of the eigenvalue inequalities: Hermitian operators A_i, congruence
// factors X_i, positive weights (alpha_i or p_i), an exponent r > 1, and a
// convex scalar function f with f(0) <= 0.
struct MajorizationInstance {
    std::vector<ComplexMatrix> operators;  // Hermitian
    std::vector<ComplexMatrix> factors;    // X_i
    std::vector<double> weights;           // alpha_i or p_i, > 0
    double r = 2.0;
    ScalarFunction f = ScalarFunction::abs_power(2.0);

    void validate() const {
        if (operators.empty() || operators.size() != factors.size() ||
            operators.size() != weights.size())
            throw ShapeError("MajorizationInstance: operators, factors, weights must have "
                             "equal size >= 1");
        for (double w : weights)
            if (!(w > 0.0)) throw BadParam("MajorizationInstance: weights must be positive");
        const std::size_t n = factors.front().rows();
        for (std::size_t i = 0; i < operators.size(); ++i) {
            if (!operators[i].square() || !factors[i].square() ||
                operators[i].rows() != n || factors[i].rows() != n)
                throw ShapeError("MajorizationInstance: operators and factors must be square "
                                 "matrices of one common size");
        }
    }
};

namespace detail {

// Convex with f(0) <= 0, decided structurally.
inline bool convex_with_nonpositive_origin(const ScalarFunction& f) {
    switch (f.kind) {
    case ScalarFunction::Kind::AbsPower:
        return f.r >= 1.0;
    case ScalarFunction::Kind::Power:
        return false; // odd powers are not convex on all of R; use AbsPower
    case ScalarFunction::Kind::Polynomial: {
        // Quadratics c0 + c1 t + c2 t^2 with c2 >= 0 and c0 <= 0.
        if (f.coeffs.size() > 3) return false;
        const double c0 = f.coeffs.empty() ? 0.0 : f.coeffs[0];
        const double c2 = f.coeffs.size() > 2 ? f.coeffs[2] : 0.0;
        return c0 <= 0.0 && c2 >= 0.0;
    }
    }
    return false;
}

struct PartialSumMargin {
    double margin = 0.0;
    bool holds = false;
};

// min over k of [sum_{j<=k} lambda_j(rhs) - sum_{j<=k} lambda_j(lhs)].
inline PartialSumMargin partial_sum_margin(const ComplexMatrix& lhs, const ComplexMatrix& rhs,
                                           const Tolerance& tol) {
    const HermitianEig le = herm_eig(lhs, tol);
    const HermitianEig re = herm_eig(rhs, tol);
    PartialSumMargin out;
    out.margin = std::numeric_limits<double>::infinity();
    double gap = 0.0;
    for (std::size_t k = 0; k < le.eigenvalues.size(); ++k) {
        gap += re.eigenvalues[k] - le.eigenvalues[k];
        out.margin = std::min(out.margin, gap);
    }
    const double scale = std::max(
        1.0, static_cast<double>(le.eigenvalues.size()) * std::max(le.norm2(), re.norm2()));
    out.holds = out.margin >= -tol.tau(scale);
    return out;
}

inline void require_map_sum_bound(const ComplexMatrix& sum, double upper, const Tolerance& tol,
                                  const char* who) {
    const HermitianEig eig = herm_eig(sum, tol);
    if (eig.lambda_min() < tol.eps_pos())
        throw ConditionViolated(std::string(who) + ": weighted factor sum is not > 0");
    if (eig.lambda_max() > upper + tol.tau(std::max(upper, eig.norm2())))
        throw ConditionViolated(std::string(who) + ": weighted factor sum exceeds its bound");
}

} // namespace detail

// Weak-majorization Jensen through congruences: for convex f with f(0) <= 0
// and f(uv) <= f(u) f(v), and 0 < sum alpha_i X_i* X_i <= I,
//   sum_j lambda_j(f(sum X_i* A_i X_i))
//     <= sum_j lambda_j(sum alpha_i f(alpha_i^{-1}) X_i* f(A_i) X_i)
// for every prefix length. Margin is the smallest prefix gap.
inline CheckOutcome check_major_jensen(const MajorizationInstance& inst,
                                       const Tolerance& tol = {}) {
    inst.validate();
    // Submultiplicativity restricts this route to |t|^r.
    if (inst.f.kind != ScalarFunction::Kind::AbsPower || inst.f.r < 1.0)
        throw BadParam("check_major_jensen: f must be AbsPower(r) with r >= 1");

    const std::size_t n = inst.factors.front().rows();
    ComplexMatrix weighted_sum(n, n);
    for (std::size_t i = 0; i < inst.factors.size(); ++i)
        weighted_sum = weighted_sum + inst.weights[i] * abs_squared(inst.factors[i]);
    detail::require_map_sum_bound(weighted_sum, 1.0, tol, "check_major_jensen");

    ComplexMatrix lhs_arg(n, n);
    ComplexMatrix rhs(n, n);
    for (std::size_t i = 0; i < inst.operators.size(); ++i) {
        const ComplexMatrix conjugated =
            inst.factors[i].adjoint() * inst.operators[i] * inst.factors[i];
        lhs_arg = lhs_arg + conjugated;
        const double coeff = inst.weights[i] * inst.f(1.0 / inst.weights[i]);
        rhs = rhs + coeff * (inst.factors[i].adjoint() *
                             func_calculus(inst.operators[i], inst.f, tol) * inst.factors[i]);
    }
    const ComplexMatrix lhs = func_calculus(lhs_arg, inst.f, tol);
    const detail::PartialSumMargin ps = detail::partial_sum_margin(lhs, rhs, tol);
    CheckOutcome out;
    out.margin = ps.margin;
    out.holds = ps.holds;
    return out;
}

// The underlying single-operator form: for positive linear maps Phi_i with
// 0 < sum alpha_i Phi_i(I) <= I and convex f with f(0) <= 0,
//   sum_j lambda_j(f(sum alpha_i Phi_i(A))) <= sum_j lambda_j(sum alpha_i Phi_i(f(A))).
inline CheckOutcome check_major_jensen_maps(const std::vector<PositiveLinearMap>& maps,
                                            const std::vector<double>& alpha,
                                            const ComplexMatrix& a, const ScalarFunction& f,
                                            const Tolerance& tol = {}) {
    if (maps.empty() || maps.size() != alpha.size())
        throw BadParam("check_major_jensen_maps: maps and alpha must match");
    for (double w : alpha)
        if (w < 0.0) throw BadParam("check_major_jensen_maps: alpha must be >= 0");
    if (!detail::convex_with_nonpositive_origin(f))
        throw BadParam("check_major_jensen_maps: f must be convex with f(0) <= 0");

    const std::size_t out_dim = maps.front().output_dim;
    ComplexMatrix weighted_unit(out_dim, out_dim);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (maps[i].output_dim != out_dim)
            throw ShapeError("check_major_jensen_maps: maps disagree on output dimension");
        weighted_unit = weighted_unit + alpha[i] * map_identity_image(maps[i]);
    }
    detail::require_map_sum_bound(weighted_unit, 1.0, tol, "check_major_jensen_maps");

    ComplexMatrix lhs_arg(out_dim, out_dim);
    ComplexMatrix rhs(out_dim, out_dim);
    const ComplexMatrix fa = func_calculus(a, f, tol);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        lhs_arg = lhs_arg + alpha[i] * apply_map(maps[i], a);
        rhs = rhs + alpha[i] * apply_map(maps[i], fa);
    }
    const ComplexMatrix lhs = func_calculus(lhs_arg, f, tol);
    const detail::PartialSumMargin ps = detail::partial_sum_margin(lhs, rhs, tol);
    CheckOutcome out;
    out.margin = ps.margin;
    out.holds = ps.holds;
    return out;
}

// Eigenvalue Bohr inequality: for r > 1, p_i > 0 and
// 0 < sum p_i^{1/(1-r)} X_i* X_i <= (sum p_i^{1/(1-r)}) I,
//   sum_j lambda_j(|sum X_i* A_i X_i|^r)
//     <= (sum p_i^{1/(1-r)})^{r-1} sum_j lambda_j(sum p_i X_i* |A_i|^r X_i)
// for every prefix length.
inline CheckOutcome check_eigen_bohr(const MajorizationInstance& inst,
                                     const Tolerance& tol = {}) {
    inst.validate();
    if (!(inst.r > 1.0)) throw BadParam("check_eigen_bohr: r must be > 1");

    const std::size_t n = inst.factors.front().rows();
    double s_sum = 0.0;
    ComplexMatrix weighted_sum(n, n);
    for (std::size_t i = 0; i < inst.factors.size(); ++i) {
        const double s = std::pow(inst.weights[i], 1.0 / (1.0 - inst.r));
        s_sum += s;
        weighted_sum = weighted_sum + s * abs_squared(inst.factors[i]);
    }
    detail::require_map_sum_bound(weighted_sum, s_sum, tol, "check_eigen_bohr");

    ComplexMatrix lhs_arg(n, n);
    ComplexMatrix rhs(n, n);
    for (std::size_t i = 0; i < inst.operators.size(); ++i) {
        lhs_arg = lhs_arg + inst.factors[i].adjoint() * inst.operators[i] * inst.factors[i];
        rhs = rhs + inst.weights[i] *
                        (inst.factors[i].adjoint() *
                         abs_power_op(inst.operators[i], inst.r, tol) * inst.factors[i]);
    }
    rhs = std::pow(s_sum, inst.r - 1.0) * rhs;
    const ComplexMatrix lhs = abs_power_op(lhs_arg, inst.r, tol);
    const detail::PartialSumMargin ps = detail::partial_sum_margin(lhs, rhs, tol);
    CheckOutcome out;
    out.margin = ps.margin;
    out.holds = ps.holds;
    return out;
}

} // namespace bohr
