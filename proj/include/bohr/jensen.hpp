#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bohr/calculus.hpp"
#include "bohr/catalog.hpp"
#include "bohr/rng.hpp"

namespace bohr {

// Positive linear map between matrix algebras, as a tagged union of the four
// concrete kinds used throughout: congruence A -> X*AX, vector state
// A -> <Ax, x>, nonnegative scaling A -> wA, and principal-block compression.
// Positivity holds by construction for every kind.
struct PositiveLinearMap {
    enum class Kind { Congruence, VectorState, Scale, Pinch };

    Kind kind = Kind::Scale;
    ComplexMatrix factor;                  // Congruence
    std::vector<cplx> state;               // VectorState
    double weight = 1.0;                   // Scale
    std::vector<std::size_t> block;        // Pinch
    std::size_t input_dim = 1;
    std::size_t output_dim = 1;

    static PositiveLinearMap congruence(ComplexMatrix x) {
        PositiveLinearMap m;
        m.kind = Kind::Congruence;
        m.input_dim = x.rows();
        m.output_dim = x.cols();
        m.factor = std::move(x);
        return m;
    }

    static PositiveLinearMap vector_state(std::vector<cplx> x) {
        if (x.empty()) throw BadParam("vector_state: empty vector");
        PositiveLinearMap m;
        m.kind = Kind::VectorState;
        m.input_dim = x.size();
        m.output_dim = 1;
        m.state = std::move(x);
        return m;
    }

    static PositiveLinearMap scale(double w, std::size_t dim) {
        if (w < 0.0) throw BadParam("scale: weight must be >= 0");
        if (dim == 0) throw BadParam("scale: dim must be >= 1");
        PositiveLinearMap m;
        m.kind = Kind::Scale;
        m.weight = w;
        m.input_dim = dim;
        m.output_dim = dim;
        return m;
    }

    static PositiveLinearMap pinch(std::vector<std::size_t> indices, std::size_t input_dim) {
        if (indices.empty()) throw BadParam("pinch: empty index list");
        for (std::size_t i : indices)
            if (i >= input_dim) throw BadParam("pinch: index out of range");
        for (std::size_t i = 0; i + 1 < indices.size(); ++i)
            for (std::size_t j = i + 1; j < indices.size(); ++j)
                if (indices[i] == indices[j]) throw BadParam("pinch: duplicate index");
        PositiveLinearMap m;
        m.kind = Kind::Pinch;
        m.input_dim = input_dim;
        m.output_dim = indices.size();
        m.block = std::move(indices);
        return m;
    }
};

inline ComplexMatrix apply_map(const PositiveLinearMap& map, const ComplexMatrix& a) {
    if (!a.square() || a.rows() != map.input_dim)
        throw ShapeError("apply_map: operator dimension does not match the map");
    switch (map.kind) {
    case PositiveLinearMap::Kind::Congruence:
        return map.factor.adjoint() * a * map.factor;
    case PositiveLinearMap::Kind::VectorState: {
        ComplexMatrix r(1, 1);
        r(0, 0) = quadratic_form(a, map.state);
        return r;
    }
    case PositiveLinearMap::Kind::Scale:
        return map.weight * a;
    case PositiveLinearMap::Kind::Pinch: {
        ComplexMatrix r(map.output_dim, map.output_dim);
        for (std::size_t i = 0; i < map.output_dim; ++i)
            for (std::size_t j = 0; j < map.output_dim; ++j)
                r(i, j) = a(map.block[i], map.block[j]);
        return r;
    }
    }
    throw BadParam("apply_map: unknown map kind");
}

inline ComplexMatrix map_identity_image(const PositiveLinearMap& map) {
    return apply_map(map, ComplexMatrix::identity(map.input_dim));
}

// One instance of the discrete Jensen-Bohr inequality:
//   (sum phi_i(A_i))^r <= (k sum a_i^{1/(1-r)})^{r-1} sum a_i phi_i(A_i^r).
struct JensenInstance {
    std::vector<PositiveLinearMap> maps;
    std::vector<double> weights;           // a_i > 0
    double r = 2.0;
    std::vector<ComplexMatrix> operators;  // Hermitian PSD, same dim as maps' input
    std::optional<double> k_constant;      // defaults to 1

    void validate() const {
        if (maps.empty() || maps.size() != weights.size() || maps.size() != operators.size())
            throw BadParam("JensenInstance: maps, weights, operators must have equal size >= 1");
        for (double a : weights)
            if (!(a > 0.0)) throw BadParam("JensenInstance: weights must be positive");
        if (k_constant && !(*k_constant > 0.0))
            throw BadParam("JensenInstance: k must be positive");
        const std::size_t out = maps.front().output_dim;
        for (std::size_t i = 0; i < maps.size(); ++i) {
            if (maps[i].output_dim != out)
                throw ShapeError("JensenInstance: maps disagree on output dimension");
            if (!operators[i].square() || operators[i].rows() != maps[i].input_dim)
                throw ShapeError("JensenInstance: operator/map dimension mismatch");
        }
    }

    double k() const { return k_constant.value_or(1.0); }
};

struct WeightConditionResult {
    bool satisfied = false;
    double margin = 0.0; // lambda_min(k sum_i s_i I - sum_i s_i phi_i(I)), s_i = a_i^{1/(1-r)}
};

// Hypothesis  sum a_i^{1/(1-r)} phi_i(I) <= k (sum a_i^{1/(1-r)}) I.
inline WeightConditionResult check_weight_condition(const std::vector<PositiveLinearMap>& maps,
                                                    const std::vector<double>& weights,
                                                    double r, double k = 1.0,
                                                    const Tolerance& tol = {}) {
    if (maps.empty() || maps.size() != weights.size())
        throw BadParam("check_weight_condition: maps and weights must match");
    if (r == 1.0) throw BadParam("check_weight_condition: r must differ from 1");
    if (!(k > 0.0)) throw BadParam("check_weight_condition: k must be positive");

    const std::size_t out = maps.front().output_dim;
    ComplexMatrix image_sum(out, out);
    double s_sum = 0.0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (!(weights[i] > 0.0))
            throw BadParam("check_weight_condition: weights must be positive");
        if (maps[i].output_dim != out)
            throw ShapeError("check_weight_condition: maps disagree on output dimension");
        const double s = std::pow(weights[i], 1.0 / (1.0 - r));
        s_sum += s;
        image_sum = image_sum + s * map_identity_image(maps[i]);
    }
    const ComplexMatrix gap = k * s_sum * ComplexMatrix::identity(out) - image_sum;
    const HermitianEig eig = herm_eig(gap, tol);
    WeightConditionResult result;
    result.margin = eig.lambda_min();
    result.satisfied =
        result.margin >= -tol.tau(std::max(norm2_hermitian(image_sum, tol), k * s_sum));
    return result;
}

namespace detail {

inline void require_psd_operators(const JensenInstance& inst, const Tolerance& tol,
                                  bool strictly_positive) {
    for (const ComplexMatrix& a : inst.operators) {
        const HermitianEig eig = herm_eig(a, tol);
        if (strictly_positive) {
            if (eig.lambda_min() < tol.eps_pos())
                throw DomainError("jensen: operators must be strictly positive");
        } else if (eig.lambda_min() < -tol.tau(eig.norm2())) {
            throw DomainError("jensen: operators must be positive semidefinite");
        }
    }
}

} // namespace detail

// Conclusion of the Jensen-Bohr inequality, evaluated without verifying the
// weight condition. Used by the falsification paths that deliberately drop
// hypotheses; check_jensen_bohr is the verified entry point.
inline CheckOutcome jensen_bohr_conclusion(const JensenInstance& inst,
                                           const Tolerance& tol = {}) {
    inst.validate();
    const std::size_t out = inst.maps.front().output_dim;
    ComplexMatrix lhs_arg(out, out);
    ComplexMatrix rhs_sum(out, out);
    double s_sum = 0.0;
    for (std::size_t i = 0; i < inst.maps.size(); ++i) {
        s_sum += std::pow(inst.weights[i], 1.0 / (1.0 - inst.r));
        lhs_arg = lhs_arg + apply_map(inst.maps[i], inst.operators[i]);
        rhs_sum = rhs_sum + inst.weights[i] * apply_map(inst.maps[i],
                      func_calculus(inst.operators[i], ScalarFunction::power(inst.r), tol));
    }
    const ComplexMatrix lhs = func_calculus(lhs_arg, ScalarFunction::power(inst.r), tol);
    const ComplexMatrix rhs = std::pow(inst.k() * s_sum, inst.r - 1.0) * rhs_sum;
    return detail::operator_margin_outcome(lhs, rhs, tol);
}

// Discrete Jensen-Bohr for the operator-convex range 1 < r <= 2: verifies the
// weight condition (with the instance's k) and positivity, then evaluates
//   margin = lambda_min(RHS - LHS).
inline CheckOutcome check_jensen_bohr(const JensenInstance& inst, const Tolerance& tol = {}) {
    inst.validate();
    if (!(inst.r > 1.0) || inst.r > 2.0)
        throw BadParam("check_jensen_bohr: r must lie in (1, 2]; use check_spectra_jensen "
                       "outside the operator-convex range");
    detail::require_psd_operators(inst, tol, false);
    const WeightConditionResult wc =
        check_weight_condition(inst.maps, inst.weights, inst.r, inst.k(), tol);
    if (!wc.satisfied)
        throw ConditionViolated("check_jensen_bohr: weight condition fails, margin = " +
                                std::to_string(wc.margin));
    return jensen_bohr_conclusion(inst, tol);
}

enum class JensenMode { OperatorConvex, SpectraCondition };

// Operator Jensen inequality for a unital family:
//   margin = lambda_min( sum psi_i(f(A_i)) - f(sum psi_i(A_i)) ).
// OperatorConvex admits Power(r) with r in [1, 2] on PSD operators; the
// spectra-condition mode admits convex f once each [m_i, M_i] avoids the open
// interval between the bounds of sum psi_i(A_i).
inline CheckOutcome check_operator_jensen(const std::vector<PositiveLinearMap>& maps,
                                          const std::vector<ComplexMatrix>& operators,
                                          const ScalarFunction& f, JensenMode mode,
                                          const Tolerance& tol = {}) {
    if (maps.empty() || maps.size() != operators.size())
        throw BadParam("check_operator_jensen: maps and operators must match");
    const std::size_t out = maps.front().output_dim;
    ComplexMatrix unit_sum(out, out);
    for (const PositiveLinearMap& m : maps) {
        if (m.output_dim != out)
            throw ShapeError("check_operator_jensen: maps disagree on output dimension");
        unit_sum = unit_sum + map_identity_image(m);
    }
    const ComplexMatrix unit_gap = unit_sum - ComplexMatrix::identity(out);
    if (norm2_hermitian(unit_gap, tol) > tol.tau(1.0))
        throw NotUnital("check_operator_jensen: sum psi_i(I) != I");

    if (mode == JensenMode::OperatorConvex) {
        if (f.kind != ScalarFunction::Kind::Power || f.r < 1.0 || f.r > 2.0)
            throw BadParam("check_operator_jensen: operator-convex mode admits Power(r), "
                           "r in [1, 2]");
        for (const ComplexMatrix& a : operators) {
            const HermitianEig eig = herm_eig(a, tol);
            if (eig.lambda_min() < -tol.tau(eig.norm2()))
                throw DomainError("check_operator_jensen: operators must be PSD");
        }
    } else {
        const bool abs_ok = f.kind == ScalarFunction::Kind::AbsPower && f.r >= 1.0;
        const bool pow_ok = f.kind == ScalarFunction::Kind::Power && (f.r >= 1.0 || f.r < 0.0);
        if (!abs_ok && !pow_ok)
            throw BadParam("check_operator_jensen: inadmissible f for spectra mode");
        ComplexMatrix a_sum(out, out);
        std::vector<std::pair<double, double>> bounds;
        for (std::size_t i = 0; i < operators.size(); ++i) {
            const HermitianEig eig = herm_eig(operators[i], tol);
            if (f.kind == ScalarFunction::Kind::Power) {
                if (f.r < 0.0 && eig.lambda_min() < tol.eps_pos())
                    throw DomainError("check_operator_jensen: Power(r<0) needs strictly "
                                      "positive operators");
                if (f.r >= 1.0 && !f.is_integer_exponent() &&
                    eig.lambda_min() < -tol.tau(eig.norm2()))
                    throw DomainError("check_operator_jensen: fractional power needs PSD "
                                      "operators");
            }
            bounds.emplace_back(eig.lambda_min(), eig.lambda_max());
            a_sum = a_sum + apply_map(maps[i], operators[i]);
        }
        const auto [m_a, big_m_a] = spectral_bounds(a_sum, tol);
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            const double slack = tol.tau(std::max({std::abs(m_a), std::abs(big_m_a),
                                                   std::abs(bounds[i].first),
                                                   std::abs(bounds[i].second)}));
            const bool empty_interval = big_m_a - m_a <= slack;
            const bool disjoint = bounds[i].second <= m_a + slack ||
                                  bounds[i].first >= big_m_a - slack;
            if (!empty_interval && !disjoint)
                throw ConditionViolated(
                    "check_operator_jensen: spectra condition fails at operator " +
                    std::to_string(i) + ": [" + std::to_string(bounds[i].first) + ", " +
                    std::to_string(bounds[i].second) + "] meets (" + std::to_string(m_a) +
                    ", " + std::to_string(big_m_a) + ")");
        }
    }

    const std::size_t dim = out;
    ComplexMatrix lhs_arg(dim, dim);
    ComplexMatrix rhs(dim, dim);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        lhs_arg = lhs_arg + apply_map(maps[i], operators[i]);
        rhs = rhs + apply_map(maps[i], func_calculus(operators[i], f, tol));
    }
    const ComplexMatrix lhs = func_calculus(lhs_arg, f, tol);
    return detail::operator_margin_outcome(lhs, rhs, tol);
}

// Jensen-Bohr instance with spectra bookkeeping for r outside (1, 2].
struct SpectraInstance {
    JensenInstance base;
    std::vector<std::pair<double, double>> bounds; // (m_i, M_i) per operator
    std::pair<double, double> a_bounds{0.0, 0.0};  // bounds of A = sum phi_i(A_i)
};

// Computes (m_i, M_i) and the bounds of A = sum phi_i(A_i) for a base
// instance; the bounds are derived, never asserted.
inline SpectraInstance make_spectra_instance(JensenInstance base, const Tolerance& tol = {}) {
    base.validate();
    SpectraInstance inst;
    const std::size_t out = base.maps.front().output_dim;
    ComplexMatrix a_sum(out, out);
    for (std::size_t i = 0; i < base.operators.size(); ++i) {
        inst.bounds.push_back(spectral_bounds(base.operators[i], tol));
        a_sum = a_sum + apply_map(base.maps[i], base.operators[i]);
    }
    inst.a_bounds = spectral_bounds(a_sum, tol);
    inst.base = std::move(base);
    return inst;
}

// Jensen-Bohr under the spectra condition, valid for r in (-inf, 0) or
// (1, inf): strictly positive operators, the weight condition, and the
// requirement that every scaled interval a_i^{-1/(1-r)} [m_i, M_i] avoids the
// open interval (m_A, M_A).
inline CheckOutcome check_spectra_jensen(const SpectraInstance& inst,
                                         const Tolerance& tol = {}) {
    inst.base.validate();
    const double r = inst.base.r;
    if (!(r < 0.0 || r > 1.0))
        throw BadParam("check_spectra_jensen: r must lie in (-inf, 0) or (1, inf)");
    detail::require_psd_operators(inst.base, tol, true);
    const WeightConditionResult wc =
        check_weight_condition(inst.base.maps, inst.base.weights, r, 1.0, tol);
    if (!wc.satisfied)
        throw ConditionViolated("check_spectra_jensen: weight condition fails, margin = " +
                                std::to_string(wc.margin));

    const auto [m_a, big_m_a] = inst.a_bounds;
    for (std::size_t i = 0; i < inst.bounds.size(); ++i) {
        const double c = std::pow(inst.base.weights[i], -1.0 / (1.0 - r));
        const double lo = c * inst.bounds[i].first;
        const double hi = c * inst.bounds[i].second;
        const double slack =
            tol.tau(std::max({std::abs(m_a), std::abs(big_m_a), std::abs(lo), std::abs(hi)}));
        const bool empty_interval = big_m_a - m_a <= slack;
        const bool disjoint = hi <= m_a + slack || lo >= big_m_a - slack;
        if (!empty_interval && !disjoint)
            throw ConditionViolated("check_spectra_jensen: scaled interval [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) +
                                    "] of operator " + std::to_string(i) + " meets (" +
                                    std::to_string(m_a) + ", " + std::to_string(big_m_a) + ")");
    }
    return jensen_bohr_conclusion(inst.base, tol);
}

struct GeneratedSpectraInstance {
    SpectraInstance instance;
    std::size_t attempts = 0; // rejection-sampling attempts consumed
};

// Rejection sampler for valid spectra-condition instances: operator spectra
// alternate between the separated bands [0.5, 1] and [4, 5], weights are
// log-uniform draws rescaled so that sum a_i^{1/(1-r)} = 1 and the weight
// condition holds with equality, and candidates are kept only once every
// hypothesis of check_spectra_jensen verifies numerically.
inline GeneratedSpectraInstance generate_spectra_instance(std::size_t dim, std::size_t n,
                                                          double r, std::uint64_t seed,
                                                          const Tolerance& tol = {}) {
    if (dim == 0 || dim > 16) throw BadParam("generate_spectra_instance: dim must be in [1, 16]");
    if (n == 0 || n > 6) throw BadParam("generate_spectra_instance: n must be in [1, 6]");
    if (!(r < 0.0 || r > 1.0))
        throw BadParam("generate_spectra_instance: r must lie in (-inf, 0) or (1, inf)");

    constexpr std::size_t max_attempts = 10000;
    SplitMix64 rng(seed);
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        JensenInstance base;
        base.r = r;
        base.weights.resize(n);
        double s_sum = 0.0;
        for (double& a : base.weights) {
            a = rng.log_uniform(0.5, 2.0);
            s_sum += std::pow(a, 1.0 / (1.0 - r));
        }
        // Rescale so sum a_i^{1/(1-r)} = 1; the inequality is invariant under
        // this common rescaling and it pins the conclusion factor to 1.
        const double c = std::pow(s_sum, r - 1.0);
        std::vector<double> s(n);
        double w_dot_s = 0.0;
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            base.weights[i] *= c;
            s[i] = std::pow(base.weights[i], 1.0 / (1.0 - r));
            w[i] = rng.uniform(0.5, 1.5);
            w_dot_s += s[i] * w[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            w[i] /= w_dot_s; // weight condition becomes an equality
            base.maps.push_back(PositiveLinearMap::scale(w[i], dim));
        }
        for (std::size_t i = 0; i < n; ++i) {
            const bool low_band = (i % 2 == 0);
            base.operators.push_back(random_matrix(MatrixKind::PositiveWithBounds, dim,
                                                    rng, 1.0, low_band ? 0.5 : 4.0,
                                                    low_band ? 1.0 : 5.0, tol));
        }

        SpectraInstance candidate = make_spectra_instance(std::move(base), tol);
        try {
            check_spectra_jensen(candidate, tol);
        } catch (const ConditionViolated&) {
            continue;
        } catch (const DomainError&) {
            continue;
        }
        return {std::move(candidate), attempt};
    }
    throw GenerationFailed("generate_spectra_instance: no admissible instance in " +
                           std::to_string(max_attempts) + " attempts");
}

} // namespace bohr
