#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bohr/calculus.hpp"
#include "bohr/order.hpp"

namespace bohr {

// Stable ids for the named inequalities and identities. The lower-snake-case
// strings are the wire format used by the CLI and JSON instances.
enum class InequalityId {
    ClassicalBohr,
    Hirzallah11,
    HirzallahNorm,
    ZhangIdentity,
    ZhangConvex,
    Parallelogram,
    Thm22,
    Cor2x2,
    Chansangiam,
    VasicKeckicScalar,
    RassiasPecaric,
    JensenSquares,
};

inline std::string to_string(InequalityId id) {
    switch (id) {
    case InequalityId::ClassicalBohr: return "classical_bohr";
    case InequalityId::Hirzallah11: return "hirzallah11";
    case InequalityId::HirzallahNorm: return "hirzallah_norm";
    case InequalityId::ZhangIdentity: return "zhang_identity";
    case InequalityId::ZhangConvex: return "zhang_convex";
    case InequalityId::Parallelogram: return "parallelogram";
    case InequalityId::Thm22: return "thm22";
    case InequalityId::Cor2x2: return "cor2x2";
    case InequalityId::Chansangiam: return "chansangiam";
    case InequalityId::VasicKeckicScalar: return "vasic_keckic_scalar";
    case InequalityId::RassiasPecaric: return "rassias_pecaric";
    case InequalityId::JensenSquares: return "jensen_squares";
    }
    throw BadParam("to_string: unknown inequality id");
}

inline std::optional<InequalityId> inequality_id_from_string(const std::string& s) {
    for (InequalityId id :
         {InequalityId::ClassicalBohr, InequalityId::Hirzallah11, InequalityId::HirzallahNorm,
          InequalityId::ZhangIdentity, InequalityId::ZhangConvex, InequalityId::Parallelogram,
          InequalityId::Thm22, InequalityId::Cor2x2, InequalityId::Chansangiam,
          InequalityId::VasicKeckicScalar, InequalityId::RassiasPecaric,
          InequalityId::JensenSquares})
        if (to_string(id) == s) return id;
    return std::nullopt;
}

// Result of one inequality or identity evaluation. For operator inequalities
// margin = lambda_min(RHS - LHS); for norm inequalities the smallest Ky Fan
// gap; for scalar inequalities the scalar gap. Identities report the residual
// ||LHS - RHS||_2 instead and hold iff it is below tolerance.
struct CheckOutcome {
    bool holds = false;
    double margin = 0.0;
    std::optional<double> residual;
    bool hypothesis_failed = false;
};

namespace detail {

inline double margin_scale(double lhs_norm, double rhs_norm) {
    return std::max({lhs_norm, rhs_norm, 1.0});
}

inline void require_conjugate_exponents(double p, double q, const char* who) {
    if (!(p > 0.0) || !(q > 0.0) || std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
        throw BadParam(std::string(who) + ": p, q are not conjugate exponents");
}

inline CheckOutcome operator_margin_outcome(const ComplexMatrix& lhs, const ComplexMatrix& rhs,
                                            const Tolerance& tol) {
    const double scale =
        margin_scale(norm2_hermitian(lhs, tol), norm2_hermitian(rhs, tol));
    CheckOutcome out;
    out.margin = herm_eig(rhs - lhs, tol).lambda_min();
    out.holds = out.margin >= -tol.tau(scale);
    return out;
}

} // namespace detail

// Exact identities: ||LHS - RHS||_2 must vanish for every input.
//   zhang_identity:  |A-B|^2 + |sqrt(p/q)A + sqrt(q/p)B|^2 = p|A|^2 + q|B|^2
//   parallelogram :  |A-B|^2 + (1/t)|tA+B|^2 = (1+t)|A|^2 + (1+1/t)|B|^2
inline CheckOutcome residual_identity(InequalityId id, const ComplexMatrix& a,
                                      const ComplexMatrix& b, double param1,
                                      double param2 = 0.0, const Tolerance& tol = {}) {
    ComplexMatrix lhs{1, 1}, rhs{1, 1};
    if (id == InequalityId::ZhangIdentity) {
        const double p = param1, q = param2;
        detail::require_conjugate_exponents(p, q, "zhang_identity");
        lhs = abs_squared(a - b) + abs_squared(std::sqrt(p / q) * a + std::sqrt(q / p) * b);
        rhs = p * abs_squared(a) + q * abs_squared(b);
    } else if (id == InequalityId::Parallelogram) {
        const double t = param1;
        if (std::abs(t) < 1e-9) throw BadParam("parallelogram: |t| < 1e-9");
        lhs = abs_squared(a - b) + (1.0 / t) * abs_squared(t * a + b);
        rhs = (1.0 + t) * abs_squared(a) + (1.0 + 1.0 / t) * abs_squared(b);
    } else {
        throw BadParam("residual_identity: id is not an identity");
    }
    const double scale =
        detail::margin_scale(norm2_hermitian(lhs, tol), norm2_hermitian(rhs, tol));
    CheckOutcome out;
    out.residual = norm2_hermitian(lhs - rhs, tol);
    out.margin = -*out.residual;
    out.holds = *out.residual <= tol.tau(scale);
    return out;
}

// Classical scalar Bohr inequality |a+b|^2 <= p|a|^2 + q|b|^2 for conjugate
// exponents. The margin hits zero exactly at (p-1)a = b.
inline CheckOutcome check_classical_bohr(cplx a, cplx b, double p, double q,
                                         const Tolerance& tol = {}) {
    detail::require_conjugate_exponents(p, q, "classical_bohr");
    const double lhs = std::norm(a + b);
    const double rhs = p * std::norm(a) + q * std::norm(b);
    CheckOutcome out;
    out.margin = rhs - lhs;
    out.holds = out.margin >= -tol.tau(detail::margin_scale(lhs, rhs));
    return out;
}

// Hirzallah's refinement: |A-B|^2 + |(p-1)A+B|^2 <= p|A|^2 + q|B|^2 for
// conjugate exponents with q >= p > 1.
inline CheckOutcome check_hirzallah(const ComplexMatrix& a, const ComplexMatrix& b, double p,
                                    double q, const Tolerance& tol = {}) {
    detail::require_conjugate_exponents(p, q, "hirzallah11");
    if (!(p > 1.0) || q < p - 1e-12) throw BadParam("hirzallah11: need q >= p > 1");
    const ComplexMatrix lhs = abs_squared(a - b) + abs_squared((p - 1.0) * a + b);
    const ComplexMatrix rhs = p * abs_squared(a) + q * abs_squared(b);
    return detail::operator_margin_outcome(lhs, rhs, tol);
}

// Norm version: gamma |||A-B|^2|| <= ||p|A|^2 X + q X |B|^2|| for every
// unitarily invariant norm, given X with Hermitian part >= gamma I > 0.
// Ky Fan dominance makes "every" finitely checkable: the margin is the
// smallest gap over the Ky Fan k-norms.
inline CheckOutcome check_hirzallah_norm(const ComplexMatrix& a, const ComplexMatrix& b,
                                         double p, double q, const ComplexMatrix& x,
                                         double gamma, const Tolerance& tol = {}) {
    detail::require_conjugate_exponents(p, q, "hirzallah_norm");
    if (!(p > 1.0) || q < p - 1e-12) throw BadParam("hirzallah_norm: need q >= p > 1");
    if (!(gamma > 0.0)) throw BadParam("hirzallah_norm: gamma must be positive");
    if (!x.square() || x.rows() != a.rows())
        throw ShapeError("hirzallah_norm: X must be square and match A");
    const HermitianEig xh = herm_eig(hermitian_part(x), tol);
    if (xh.lambda_min() < gamma - tol.tau(xh.norm2()))
        throw BadParam("hirzallah_norm: Hermitian part of X is not >= gamma I");

    const ComplexMatrix lhs = abs_squared(a - b);
    const ComplexMatrix rhs = p * (abs_squared(a) * x) + q * (x * abs_squared(b));
    const std::vector<double> sv_lhs = singular_values(lhs, tol);
    const std::vector<double> sv_rhs = singular_values(rhs, tol);

    CheckOutcome out;
    out.margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= sv_lhs.size(); ++k)
        out.margin = std::min(out.margin,
                              ky_fan_norm(sv_rhs, k) - gamma * ky_fan_norm(sv_lhs, k));
    const double scale = detail::margin_scale(gamma * sv_lhs.front(), sv_rhs.front());
    out.holds = out.margin >= -tol.tau(scale);
    return out;
}

enum class Thm22Direction { Standard, Reverse };
enum class Thm22Sign { MinusPlus, PlusMinus };

// Two-term certificate family in the parameter t:
//   |A -/+ B|^2 + |tA +/- B|^2  vs  (1+t)|A|^2 + (1+1/t)|B|^2
// Standard compiles the <= direction, Reverse the >= direction; the engine
// decides which regime of t certifies which.
inline QuadraticCertificateProblem thm22_template(double t, Thm22Direction direction,
                                                  Thm22Sign sign) {
    if (std::abs(t) < 1e-9) throw BadParam("thm22: |t| < 1e-9");
    const double sa = sign == Thm22Sign::MinusPlus ? -1.0 : 1.0;
    const ParamVector a{1.0, sa};
    const ParamVector b{t, -sa};
    const ParamVector c{1.0 + t, 1.0 + 1.0 / t};

    QuadraticCertificateProblem prob;
    prob.n = 2;
    if (direction == Thm22Direction::Standard) {
        prob.diag = c;
        prob.terms = {{+1, a}, {+1, b}};
    } else {
        prob.diag = {-c[0], -c[1]};
        prob.terms = {{-1, a}, {-1, b}};
    }
    return prob;
}

// |a1 A + a2 B|^2 + |b1 A + b2 B|^2 <= p1|A|^2 + p2|B|^2.
inline QuadraticCertificateProblem cor2x2_template(const ParamVector& a, const ParamVector& b,
                                                   const ParamVector& p) {
    if (a.size() != 2 || b.size() != 2 || p.size() != 2)
        throw BadParam("cor2x2: a, b, p must have length 2");
    QuadraticCertificateProblem prob;
    prob.n = 2;
    prob.diag = p;
    prob.terms = {{+1, a}, {+1, b}};
    return prob;
}

// sum_k |sum_i alpha_ik A_i|^2 >= sum_i p_i |A_i|^2, decided by the PSD-ness
// of the matrix X with x_ii = sum_k alpha_ik^2 - p_i, x_ij = sum_k
// alpha_ik alpha_jk.
inline QuadraticCertificateProblem chansangiam_template(
    const std::vector<ParamVector>& alpha_columns, const ParamVector& p) {
    if (alpha_columns.empty()) throw BadParam("chansangiam: need at least one alpha column");
    const std::size_t n = p.size();
    for (const ParamVector& col : alpha_columns)
        if (col.size() != n) throw BadParam("chansangiam: alpha column length != |p|");
    QuadraticCertificateProblem prob;
    prob.n = n;
    prob.diag.resize(n);
    for (std::size_t i = 0; i < n; ++i) prob.diag[i] = -p[i];
    for (const ParamVector& col : alpha_columns) prob.terms.push_back({-1, col});
    return prob;
}

// |t1 A1 + ... + tk Ak|^2 <= t1|A1|^2 + ... + tk|Ak|^2 for a convex weight
// vector t.
inline QuadraticCertificateProblem zhang_convex_template(const ParamVector& weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw BadParam("zhang_convex: weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw BadParam("zhang_convex: weights must sum to 1");
    QuadraticCertificateProblem prob;
    prob.n = weights.size();
    prob.diag = weights;
    prob.terms = {{+1, weights}};
    return prob;
}

// |A1 + ... + An|^2 <= sum r_i |A_i|^2 for r_i >= 1 with sum 1/r_i = 1.
inline QuadraticCertificateProblem jensen_squares_template(const ParamVector& r) {
    double inv_sum = 0.0;
    for (double ri : r) {
        if (ri < 1.0 - 1e-12) throw BadParam("jensen_squares: r_i must be >= 1");
        inv_sum += 1.0 / ri;
    }
    if (std::abs(inv_sum - 1.0) > 1e-12)
        throw BadParam("jensen_squares: sum of 1/r_i must equal 1");
    QuadraticCertificateProblem prob;
    prob.n = r.size();
    prob.diag = r;
    prob.terms = {{+1, ParamVector(r.size(), 1.0)}};
    return prob;
}

// Margin outcome of a certificate problem's operator expression on a concrete
// tuple, with the positive and negative contributions separated so the scale
// reflects both sides of the encoded inequality.
inline CheckOutcome certificate_expression_outcome(const QuadraticCertificateProblem& p,
                                                   const std::vector<ComplexMatrix>& tuple,
                                                   const Tolerance& tol = {}) {
    p.validate();
    if (tuple.size() != p.n)
        throw ShapeError("certificate_expression_outcome: tuple size != n");
    const std::size_t dim = tuple.front().rows();
    ComplexMatrix rhs(dim, dim), lhs(dim, dim);
    for (std::size_t i = 0; i < p.n; ++i) {
        if (p.diag[i] == 0.0) continue;
        const ComplexMatrix sq = abs_squared(tuple[i]);
        if (p.diag[i] > 0.0)
            rhs = rhs + p.diag[i] * sq;
        else
            lhs = lhs + (-p.diag[i]) * sq;
    }
    for (const auto& term : p.terms) {
        ComplexMatrix combo(dim, dim);
        for (std::size_t i = 0; i < p.n; ++i)
            if (term.coeffs[i] != 0.0) combo = combo + term.coeffs[i] * tuple[i];
        const ComplexMatrix sq = abs_squared(combo);
        if (term.sign > 0)
            lhs = lhs + sq;
        else
            rhs = rhs + sq;
    }
    return detail::operator_margin_outcome(lhs, rhs, tol);
}

// Multi-term scalar Bohr inequality (Vasic-Keckic):
//   |sum z_i|^r <= (sum a_i^{1/(1-r)})^{r-1} * sum a_i |z_i|^r,  r > 1, a_i > 0.
inline CheckOutcome check_vasic_keckic_scalar(const std::vector<cplx>& z,
                                              const std::vector<double>& a, double r,
                                              const Tolerance& tol = {}) {
    if (z.empty() || z.size() != a.size())
        throw BadParam("vasic_keckic_scalar: need matching non-empty z and a");
    if (!(r > 1.0)) throw BadParam("vasic_keckic_scalar: need r > 1");
    double weight_sum = 0.0, rhs_sum = 0.0;
    cplx z_sum{0.0, 0.0};
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!(a[i] > 0.0)) throw BadParam("vasic_keckic_scalar: a_i must be positive");
        weight_sum += std::pow(a[i], 1.0 / (1.0 - r));
        rhs_sum += a[i] * std::pow(std::abs(z[i]), r);
        z_sum += z[i];
    }
    const double lhs = std::pow(std::abs(z_sum), r);
    const double rhs = std::pow(weight_sum, r - 1.0) * rhs_sum;
    CheckOutcome out;
    out.margin = rhs - lhs;
    out.holds = out.margin >= -tol.tau(detail::margin_scale(lhs, rhs));
    return out;
}

namespace detail {

inline bool nondecreasing_convex_on_nonneg(const ScalarFunction& f) {
    switch (f.kind) {
    case ScalarFunction::Kind::AbsPower:
    case ScalarFunction::Kind::Power:
        return f.r >= 1.0;
    case ScalarFunction::Kind::Polynomial:
        for (double c : f.coeffs)
            if (c < 0.0) return false;
        return true;
    }
    return false;
}

inline double euclidean_norm(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

} // namespace detail

// Normed-space Bohr inequality (Rassias-Pecaric): for a nondecreasing convex
// f on [0, inf), p_1 > 0, p_j <= 0 (j >= 2), sum p_j > 0,
//   f(||sum p_j x_j|| / sum p_j) >= sum p_j f(||x_j||) / sum p_j.
inline CheckOutcome check_rassias_pecaric(const std::vector<std::vector<double>>& x,
                                          const std::vector<double>& p,
                                          const ScalarFunction& f, const Tolerance& tol = {}) {
    if (x.empty() || x.size() != p.size())
        throw BadParam("rassias_pecaric: need matching non-empty x and p");
    if (!(p.front() > 0.0)) throw BadParam("rassias_pecaric: p_1 must be positive");
    double p_sum = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (j > 0 && p[j] > 0.0) throw BadParam("rassias_pecaric: p_j must be <= 0 for j >= 2");
        p_sum += p[j];
    }
    if (!(p_sum > 0.0)) throw BadParam("rassias_pecaric: sum of p_j must be positive");
    if (!detail::nondecreasing_convex_on_nonneg(f))
        throw BadParam("rassias_pecaric: f must be nondecreasing convex on [0, inf)");
    const std::size_t dim = x.front().size();
    std::vector<double> combo(dim, 0.0);
    double rhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j].size() != dim) throw ShapeError("rassias_pecaric: vectors differ in length");
        for (std::size_t i = 0; i < dim; ++i) combo[i] += p[j] * x[j][i];
        rhs += p[j] * f(detail::euclidean_norm(x[j]));
    }
    rhs /= p_sum;
    const double lhs = f(detail::euclidean_norm(combo) / p_sum);
    CheckOutcome out;
    out.margin = lhs - rhs;
    out.holds =
        out.margin >= -tol.tau(detail::margin_scale(std::abs(lhs), std::abs(rhs)));
    return out;
}

namespace detail {

// Proportionality-with-growth conditions that force Lambda(a) <= Lambda(b)
// in dimension 3: |a_i| <= |b_i| and a_i b_j = a_j b_i for i != j.
inline bool monotonic_3d_conditions(const ParamVector& a, const ParamVector& b) {
    if (a.size() != 3) return false;
    double scale = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    const double cross_tol = 1e-12 * std::max(scale * scale, 1.0);
    for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(a[i]) > std::abs(b[i])) return false;
        for (std::size_t j = i + 1; j < 3; ++j)
            if (std::abs(a[i] * b[j] - a[j] * b[i]) > cross_tol) return false;
    }
    return true;
}

} // namespace detail

// Monotonicity of F(a) = |sum a_i A_i|^2: Lambda(a) <= Lambda(b) implies
// F(a) <= F(b) for every fixed tuple. The hypothesis is evaluated first
// (Loewner order on the Gram matrices, or the 3D proportionality conditions);
// on failure the outcome reports hypothesis_failed instead of a verdict.
inline CheckOutcome check_monotonic_F(const ParamVector& a, const ParamVector& b,
                                      const std::vector<std::vector<ComplexMatrix>>& tuples,
                                      const Tolerance& tol = {}) {
    if (a.size() != b.size()) throw ShapeError("monotonic_f: |a| != |b|");
    if (tuples.empty()) throw BadParam("monotonic_f: need at least one tuple");
    for (const auto& tuple : tuples)
        if (tuple.size() != a.size())
            throw ShapeError("monotonic_f: tuple length != |a|");

    const bool hypothesis = loewner_leq(gram(a), gram(b), tol) ||
                            detail::monotonic_3d_conditions(a, b);
    CheckOutcome out;
    if (!hypothesis) {
        out.hypothesis_failed = true;
        return out;
    }

    out.holds = true;
    out.margin = std::numeric_limits<double>::infinity();
    for (const auto& tuple : tuples) {
        const std::size_t dim = tuple.front().rows();
        ComplexMatrix sum_a(dim, dim), sum_b(dim, dim);
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            sum_a = sum_a + a[i] * tuple[i];
            sum_b = sum_b + b[i] * tuple[i];
        }
        const ComplexMatrix fa = abs_squared(sum_a);
        const ComplexMatrix fb = abs_squared(sum_b);
        const double scale =
            detail::margin_scale(norm2_hermitian(fa, tol), norm2_hermitian(fb, tol));
        const double margin = herm_eig(fb - fa, tol).lambda_min();
        out.margin = std::min(out.margin, margin);
        out.holds = out.holds && margin >= -tol.tau(scale);
    }
    return out;
}

} // namespace bohr
