#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bohr/io.hpp"
#include "bohr/rng.hpp"

namespace bohr {

struct FuzzConfig {
    std::size_t dim = 4;           // operator dimension, <= 16
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    double scale = 1.0;            // entry magnitude bound for random draws

    void validate() const {
        if (dim == 0 || dim > 16) throw BadParam("FuzzConfig: dim must be in [1, 16]");
        if (trials == 0) throw BadParam("FuzzConfig: trials must be >= 1");
        if (!(scale > 0.0)) throw BadParam("FuzzConfig: scale must be positive");
    }
};

struct Violation {
    std::size_t trial_index = 0;
    double margin = 0.0;       // < -tau for the evaluated check
    io::json instance;         // replayable instance description
};

struct FuzzReport {
    std::string check;
    FuzzConfig config;
    std::size_t trials = 0;
    double worst_margin = 0.0;
    std::size_t hypothesis_failures = 0; // generator bugs, reported separately
    std::size_t generator_attempts = 0;  // rejection-sampling effort, when applicable
    std::vector<Violation> violations;
};

namespace io {

inline json to_json(const FuzzReport& r) {
    json violations = json::array();
    for (const Violation& v : r.violations)
        violations.push_back(json{{"trial_index", v.trial_index},
                                  {"margin", v.margin},
                                  {"instance", v.instance}});
    return json{{"check", r.check},
                {"dim", r.config.dim},
                {"trials", r.trials},
                {"seed", r.config.seed},
                {"worst_margin", r.worst_margin},
                {"hypothesis_failures", r.hypothesis_failures},
                {"generator_attempts", r.generator_attempts},
                {"violations", std::move(violations)}};
}

} // namespace io

namespace detail {

struct TrialResult {
    CheckOutcome outcome;
    bool hypothesis_ok = true;
    io::json instance;
};

inline double conjugate_p(SplitMix64& rng) { return 1.0 + rng.log_uniform(0.05, 20.0); }

// p in (1, 2] so that q = p/(p-1) >= p.
inline double ordered_conjugate_p(SplitMix64& rng) { return 1.0 + rng.uniform(1e-3, 1.0); }

inline std::vector<ComplexMatrix> random_tuple(std::size_t n, std::size_t dim,
                                               SplitMix64& rng, double scale) {
    std::vector<ComplexMatrix> tuple;
    tuple.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        tuple.push_back(general_from_stream(dim, rng, scale));
    return tuple;
}

inline std::vector<double> simplex_weights(std::size_t n, SplitMix64& rng) {
    std::vector<double> w(n);
    double sum = 0.0;
    for (double& x : w) {
        double u = rng.uniform01();
        while (u <= 0.0) u = rng.uniform01();
        x = -std::log(u);
        sum += x;
    }
    for (double& x : w) x /= sum;
    return w;
}

inline std::size_t draw_count(SplitMix64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng.next_u64() % (hi - lo + 1));
}

// Scales congruence/state/scale maps by a common factor on phi_i(I).
inline void rescale_maps(std::vector<PositiveLinearMap>& maps, double factor) {
    const double root = std::sqrt(factor);
    for (PositiveLinearMap& m : maps) {
        switch (m.kind) {
        case PositiveLinearMap::Kind::Scale: m.weight *= factor; break;
        case PositiveLinearMap::Kind::Congruence: m.factor = root * m.factor; break;
        case PositiveLinearMap::Kind::VectorState:
            for (cplx& z : m.state) z *= root;
            break;
        case PositiveLinearMap::Kind::Pinch:
            throw BadParam("rescale_maps: pinch maps have no closed-form rescale");
        }
    }
}

inline io::json certificate_trial_instance(const QuadraticCertificateProblem& p,
                                           const std::vector<ComplexMatrix>& tuple) {
    io::json ops = io::json::array();
    for (const ComplexMatrix& a : tuple) ops.push_back(io::to_json(a));
    return io::json{{"problem", io::to_json(p)}, {"operators", std::move(ops)}};
}

inline TrialResult certificate_trial(const QuadraticCertificateProblem& p,
                                     const FuzzConfig& cfg, SplitMix64& rng,
                                     const Tolerance& tol, bool expect_certified) {
    TrialResult r;
    if (expect_certified && !certify(p, tol).certified()) {
        r.hypothesis_ok = false;
        return r;
    }
    const std::vector<ComplexMatrix> tuple = random_tuple(p.n, cfg.dim, rng, cfg.scale);
    r.outcome = certificate_expression_outcome(p, tuple, tol);
    r.instance = certificate_trial_instance(p, tuple);
    return r;
}

inline JensenInstance random_jensen_instance(const FuzzConfig& cfg, SplitMix64& rng, double r,
                                             bool satisfy_weight_condition,
                                             const Tolerance& tol) {
    JensenInstance inst;
    inst.r = r;
    const std::size_t n = draw_count(rng, 1, 3);
    const std::size_t style = static_cast<std::size_t>(rng.next_u64() % 3);
    const std::size_t dim = cfg.dim;
    for (std::size_t i = 0; i < n; ++i) {
        inst.weights.push_back(rng.log_uniform(0.5, 2.0));
        if (style == 0) {
            inst.maps.push_back(PositiveLinearMap::scale(rng.uniform(0.2, 1.5), dim));
        } else if (style == 1) {
            inst.maps.push_back(
                PositiveLinearMap::congruence(general_from_stream(dim, rng, 1.0)));
        } else {
            std::vector<cplx> x(dim);
            for (cplx& z : x) z = rng.complex_normal();
            inst.maps.push_back(PositiveLinearMap::vector_state(std::move(x)));
        }
        inst.operators.push_back(
            random_matrix(MatrixKind::Psd, dim, rng, cfg.scale, 0, 0, tol));
    }
    double s_sum = 0.0;
    const std::size_t out = inst.maps.front().output_dim;
    ComplexMatrix image(out, out);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = std::pow(inst.weights[i], 1.0 / (1.0 - r));
        s_sum += s;
        image = image + s * map_identity_image(inst.maps[i]);
    }
    const double top = herm_eig(image, tol).lambda_max();
    if (satisfy_weight_condition) {
        if (top > s_sum) rescale_maps(inst.maps, (1.0 - 1e-9) * s_sum / top);
    } else {
        // Deliberately break the hypothesis by a clear factor.
        rescale_maps(inst.maps, rng.uniform(1.3, 2.0) * s_sum / std::max(top, 1e-12));
    }
    return inst;
}

inline MajorizationInstance random_majorization_instance(const FuzzConfig& cfg,
                                                         SplitMix64& rng, double r,
                                                         const ScalarFunction& f, bool eigen,
                                                         const Tolerance& tol) {
    MajorizationInstance inst;
    inst.r = r;
    inst.f = f;
    const std::size_t ell = draw_count(rng, 1, 3);
    double s_sum = 0.0;
    for (std::size_t i = 0; i < ell; ++i) {
        inst.weights.push_back(rng.log_uniform(0.5, 2.0));
        inst.factors.push_back(general_from_stream(cfg.dim, rng, 1.0));
        inst.operators.push_back(
            random_matrix(MatrixKind::Hermitian, cfg.dim, rng, cfg.scale, 0, 0, tol));
        s_sum += eigen ? std::pow(inst.weights.back(), 1.0 / (1.0 - r)) : 0.0;
    }
    // Rescale the congruence factors so the weighted factor sum meets its
    // upper bound (I for the Jensen route, (sum s_i) I for the Bohr route).
    ComplexMatrix weighted(cfg.dim, cfg.dim);
    for (std::size_t i = 0; i < ell; ++i) {
        const double coeff =
            eigen ? std::pow(inst.weights[i], 1.0 / (1.0 - r)) : inst.weights[i];
        weighted = weighted + coeff * abs_squared(inst.factors[i]);
    }
    const double bound = eigen ? s_sum : 1.0;
    const double top = herm_eig(weighted, tol).lambda_max();
    const double factor = std::sqrt((1.0 - 1e-9) * bound / std::max(top, 1e-300));
    if (factor < 1.0)
        for (ComplexMatrix& x : inst.factors) x = factor * x;
    return inst;
}

// One fuzz trial for the named check. Recipes construct instances satisfying
// the check's hypotheses before evaluating; instances that fail hypothesis
// verification are flagged rather than evaluated.
inline TrialResult run_fuzz_trial(const std::string& check, const FuzzConfig& cfg,
                                  const io::json& params, SplitMix64& rng,
                                  const Tolerance& tol, std::size_t* generator_attempts) {
    TrialResult r;

    try {
        if (check == "zhang_identity") {
            const double p = conjugate_p(rng);
            const double q = p / (p - 1.0);
            const ComplexMatrix a = random_matrix(MatrixKind::General, cfg.dim, rng, cfg.scale);
            const ComplexMatrix b = random_matrix(MatrixKind::General, cfg.dim, rng, cfg.scale);
            r.outcome = residual_identity(InequalityId::ZhangIdentity, a, b, p, q, tol);
            r.instance = io::json{{"id", check}, {"p", p}, {"q", q},
                                  {"A", io::to_json(a)}, {"B", io::to_json(b)}};
        } else if (check == "parallelogram") {
            double t = 0.0;
            do {
                t = rng.uniform(-3.0, 3.0);
            } while (std::abs(t) < 1e-3);
            const ComplexMatrix a = random_matrix(MatrixKind::General, cfg.dim, rng, cfg.scale);
            const ComplexMatrix b = random_matrix(MatrixKind::General, cfg.dim, rng, cfg.scale);
            r.outcome = residual_identity(InequalityId::Parallelogram, a, b, t, 0.0, tol);
            r.instance = io::json{{"id", check}, {"t", t},
                                  {"A", io::to_json(a)}, {"B", io::to_json(b)}};
        } else if (check == "classical_bohr") {
            const double p = conjugate_p(rng);
            const double q = p / (p - 1.0);
            const cplx a = cfg.scale * rng.complex_normal();
            const cplx b = cfg.scale * rng.complex_normal();
            r.outcome = check_classical_bohr(a, b, p, q, tol);
            r.instance = io::json{{"id", check}, {"a", io::to_json(a)}, {"b", io::to_json(b)},
                                  {"p", p}, {"q", q}};
        } else if (check == "hirzallah11") {
            const double p = ordered_conjugate_p(rng);
            const double q = p / (p - 1.0);
            const ComplexMatrix a = random_matrix(MatrixKind::General, cfg.dim, rng, cfg.scale);
            const ComplexMatrix b = random_matrix(MatrixKind::General, cfg.dim, rng, cfg.scale);
            r.outcome = check_hirzallah(a, b, p, q, tol);
            r.instance = io::json{{"id", check}, {"p", p}, {"q", q},
                                  {"A", io::to_json(a)}, {"B", io::to_json(b)}};
        } else if (check == "hirzallah_norm") {
            const double p = ordered_conjugate_p(rng);
            const double q = p / (p - 1.0);
            const double gamma = rng.log_uniform(0.1, 2.0);
            const ComplexMatrix psd =
                random_matrix(MatrixKind::Psd, cfg.dim, rng, cfg.scale, 0, 0, tol);
            const ComplexMatrix x = gamma * ComplexMatrix::identity(cfg.dim) + psd;
            const ComplexMatrix a = random_matrix(MatrixKind::General, cfg.dim, rng, cfg.scale);
            const ComplexMatrix b = random_matrix(MatrixKind::General, cfg.dim, rng, cfg.scale);
            r.outcome = check_hirzallah_norm(a, b, p, q, x, gamma, tol);
            r.instance = io::json{{"id", check}, {"p", p}, {"q", q}, {"gamma", gamma},
                                  {"A", io::to_json(a)}, {"B", io::to_json(b)},
                                  {"X", io::to_json(x)}};
        } else if (check == "thm22") {
            const double t = params.contains("t") ? params.at("t").get<double>()
                                                  : rng.uniform(1e-3, 1.0);
            const std::string dir = params.value("direction", "standard");
            const std::string sign = params.value("sign", "minus_plus");
            const QuadraticCertificateProblem p = io::certificate_problem_from_json(
                io::json{{"id", "thm22"}, {"t", t}, {"direction", dir}, {"sign", sign}});
            r = certificate_trial(p, cfg, rng, tol, false);
            r.instance["id"] = check;
            r.instance["t"] = t;
        } else if (check == "cor2x2") {
            ParamVector a{rng.normal(), rng.normal()}, b{rng.normal(), rng.normal()};
            const double u = std::abs(a[0] * a[1] + b[0] * b[1]);
            ParamVector p{a[0] * a[0] + b[0] * b[0] + u + rng.uniform(0.0, 1.0),
                          a[1] * a[1] + b[1] * b[1] + u + rng.uniform(0.0, 1.0)};
            r = certificate_trial(cor2x2_template(a, b, p), cfg, rng, tol, true);
            r.instance["id"] = check;
        } else if (check == "chansangiam") {
            const std::size_t n = draw_count(rng, 2, 4);
            const std::size_t m_cols = draw_count(rng, 1, 3);
            std::vector<ParamVector> cols(m_cols, ParamVector(n));
            for (auto& col : cols)
                for (double& v : col) v = rng.normal();
            // p = delta * lambda_min(G G^T) keeps the coefficient matrix PSD.
            ComplexMatrix gg(n, n);
            for (const auto& col : cols) gg = gg + gram(col);
            const double lam = std::max(herm_eig(gg, tol).lambda_min(), 0.0);
            const ParamVector p(n, rng.uniform(0.0, 1.0) * lam);
            r = certificate_trial(chansangiam_template(cols, p), cfg, rng, tol, true);
            r.instance["id"] = check;
        } else if (check == "zhang_convex") {
            const std::size_t n = draw_count(rng, 2, 6);
            r = certificate_trial(zhang_convex_template(simplex_weights(n, rng)),
                                          cfg, rng, tol, true);
            r.instance["id"] = check;
        } else if (check == "jensen_squares") {
            const std::size_t n = draw_count(rng, 2, 6);
            ParamVector rr = simplex_weights(n, rng);
            for (double& x : rr) x = 1.0 / x;
            r = certificate_trial(jensen_squares_template(rr), cfg, rng, tol, true);
            r.instance["id"] = check;
        } else if (check == "vasic_keckic_scalar") {
            const std::size_t n = draw_count(rng, 2, 6);
            const double exponents[] = {1.5, 2.0, 3.0};
            const double rr = params.contains("r") ? params.at("r").get<double>()
                                                   : exponents[rng.next_u64() % 3];
            std::vector<cplx> z(n);
            std::vector<double> a(n);
            io::json zj = io::json::array();
            for (std::size_t i = 0; i < n; ++i) {
                z[i] = cfg.scale * rng.complex_normal();
                a[i] = rng.log_uniform(0.2, 5.0);
                zj.push_back(io::to_json(z[i]));
            }
            r.outcome = check_vasic_keckic_scalar(z, a, rr, tol);
            r.instance = io::json{{"id", check}, {"r", rr}, {"a", a}, {"z", std::move(zj)}};
        } else if (check == "rassias_pecaric") {
            const std::size_t n = draw_count(rng, 2, 4);
            const std::size_t vec_dim = draw_count(rng, 1, 4);
            std::vector<double> p(n);
            p[0] = rng.uniform(0.5, 3.0);
            for (std::size_t j = 1; j < n; ++j)
                p[j] = -rng.uniform(0.0, 0.8 * p[0] / static_cast<double>(n - 1));
            const double exponents[] = {1.0, 1.5, 2.0, 3.0};
            const ScalarFunction f = ScalarFunction::power(exponents[rng.next_u64() % 4]);
            std::vector<std::vector<double>> xs(n, std::vector<double>(vec_dim));
            for (auto& x : xs)
                for (double& v : x) v = rng.uniform(-cfg.scale, cfg.scale);
            r.outcome = check_rassias_pecaric(xs, p, f, tol);
            r.instance = io::json{{"id", check}, {"p", p}, {"f", io::to_json(f)}, {"x", xs}};
        } else if (check == "monotonic_f") {
            const std::size_t n = draw_count(rng, 2, 4);
            ParamVector a(n), b(n);
            const double c = (rng.next_u64() % 2 ? 1.0 : -1.0) * rng.uniform(1.0, 3.0);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = rng.normal();
                b[i] = c * a[i];
            }
            std::vector<std::vector<ComplexMatrix>> tuples;
            io::json tj = io::json::array();
            for (int k = 0; k < 3; ++k) {
                tuples.push_back(random_tuple(n, cfg.dim, rng, cfg.scale));
                io::json ops = io::json::array();
                for (const ComplexMatrix& m : tuples.back()) ops.push_back(io::to_json(m));
                tj.push_back(std::move(ops));
            }
            r.outcome = check_monotonic_F(a, b, tuples, tol);
            r.hypothesis_ok = !r.outcome.hypothesis_failed;
            r.instance = io::json{{"id", check}, {"a", a}, {"b", b}, {"tuples", std::move(tj)}};
        } else if (check == "jensen_bohr") {
            const double exponents[] = {1.1, 1.5, 2.0};
            const double rr = params.contains("r") ? params.at("r").get<double>()
                                                   : exponents[rng.next_u64() % 3];
            const JensenInstance inst = random_jensen_instance(cfg, rng, rr, true, tol);
            r.outcome = check_jensen_bohr(inst, tol);
            r.instance = io::to_json(inst);
        } else if (check == "jensen_bohr_nohyp") {
            const double rr = params.value("r", 2.0);
            const JensenInstance inst = random_jensen_instance(cfg, rng, rr, false, tol);
            r.outcome = jensen_bohr_conclusion(inst, tol);
            r.instance = io::to_json(inst);
            r.instance["id"] = check;
        } else if (check == "operator_jensen") {
            const std::size_t n = draw_count(rng, 1, 3);
            std::vector<ComplexMatrix> gs;
            ComplexMatrix s(cfg.dim, cfg.dim);
            for (std::size_t i = 0; i < n; ++i) {
                gs.push_back(random_matrix(MatrixKind::General, cfg.dim, rng, 1.0));
                s = s + abs_squared(gs.back());
            }
            const ComplexMatrix root_inv =
                func_calculus(s, ScalarFunction::power(-0.5), tol);
            std::vector<PositiveLinearMap> maps;
            std::vector<ComplexMatrix> ops;
            io::json mj = io::json::array(), oj = io::json::array();
            for (std::size_t i = 0; i < n; ++i) {
                maps.push_back(PositiveLinearMap::congruence(gs[i] * root_inv));
                ops.push_back(
                    random_matrix(MatrixKind::Psd, cfg.dim, rng, cfg.scale, 0, 0, tol));
                mj.push_back(io::to_json(maps.back()));
                oj.push_back(io::to_json(ops.back()));
            }
            const ScalarFunction f = ScalarFunction::power(rng.uniform(1.0, 2.0));
            r.outcome = check_operator_jensen(maps, ops, f, JensenMode::OperatorConvex, tol);
            r.instance = io::json{{"id", check}, {"mode", "operator_convex"},
                                  {"f", io::to_json(f)}, {"maps", std::move(mj)},
                                  {"operators", std::move(oj)}};
        } else if (check == "spectra_jensen") {
            const double rr = params.value("r", 3.0);
            const std::size_t dim = std::min<std::size_t>(cfg.dim, 4);
            const GeneratedSpectraInstance gen =
                generate_spectra_instance(dim, 2, rr, rng.next_u64(), tol);
            if (generator_attempts) *generator_attempts += gen.attempts;
            r.outcome = check_spectra_jensen(gen.instance, tol);
            r.instance = io::to_json(gen.instance);
        } else if (check == "major_jensen") {
            const double exponents[] = {1.0, 2.0, 3.0};
            const ScalarFunction f =
                ScalarFunction::abs_power(exponents[rng.next_u64() % 3]);
            const MajorizationInstance inst =
                random_majorization_instance(cfg, rng, 2.0, f, false, tol);
            r.outcome = check_major_jensen(inst, tol);
            r.instance = io::to_json(inst);
            r.instance["id"] = check;
        } else if (check == "eigen_bohr") {
            const double exponents[] = {1.5, 2.0, 3.0};
            const double rr = params.contains("r") ? params.at("r").get<double>()
                                                   : exponents[rng.next_u64() % 3];
            const MajorizationInstance inst = random_majorization_instance(
                cfg, rng, rr, ScalarFunction::abs_power(rr), true, tol);
            r.outcome = check_eigen_bohr(inst, tol);
            r.instance = io::to_json(inst);
            r.instance["id"] = check;
        } else {
            throw BadParam("fuzz: unknown check '" + check + "'");
        }
    } catch (const ConditionViolated&) {
        r.hypothesis_ok = false;
    } catch (const DomainError&) {
        r.hypothesis_ok = false;
    } catch (const NotUnital&) {
        r.hypothesis_ok = false;
    } catch (const GenerationFailed&) {
        r.hypothesis_ok = false;
    }
    return r;
}

} // namespace detail

// Property fuzzing: `trials` independent instances of the named check, each
// from the per-trial seed mix(seed, trial), with violations collected in
// trial order. Identical (check, cfg, params) give identical reports.
inline FuzzReport fuzz(const std::string& check, const FuzzConfig& cfg,
                       const io::json& params = io::json::object(),
                       const Tolerance& tol = {}) {
    cfg.validate();
    FuzzReport report;
    report.check = check;
    report.config = cfg;
    report.trials = cfg.trials;
    report.worst_margin = std::numeric_limits<double>::infinity();

    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        SplitMix64 rng(per_trial_seed(cfg.seed, trial));
        detail::TrialResult r =
            detail::run_fuzz_trial(check, cfg, params, rng, tol, &report.generator_attempts);
        if (!r.hypothesis_ok) {
            ++report.hypothesis_failures;
            continue;
        }
        report.worst_margin = std::min(report.worst_margin, r.outcome.margin);
        if (!r.outcome.holds)
            report.violations.push_back({trial, r.outcome.margin, std::move(r.instance)});
    }
    if (report.hypothesis_failures == report.trials) report.worst_margin = 0.0;
    return report;
}

// Violation search for a certificate problem. A refuted certificate always
// yields a violation: the unit eigenvector witness v realizes lambda_min
// exactly through the 1x1 tuple A_i = v_i. Hill climbing over dim x dim
// tuples (step halving on 20 consecutive non-improvements) can only deepen
// that margin; for certified problems it runs its budget and reports none.
inline std::optional<Violation> falsify(const QuadraticCertificateProblem& p, std::size_t dim,
                                        std::size_t iters, std::uint64_t seed,
                                        const Tolerance& tol = {}) {
    const CertificateResult cert = certify(p, tol);
    const double scale = 1.0;
    SplitMix64 rng(seed);

    std::vector<ComplexMatrix> tuple = detail::random_tuple(p.n, dim, rng, scale);
    CheckOutcome best = certificate_expression_outcome(p, tuple, tol);
    double step = 0.5 * scale;
    std::size_t consecutive_failures = 0;
    for (std::size_t it = 0; it < iters && step >= 1e-6 * scale; ++it) {
        std::vector<ComplexMatrix> candidate = tuple;
        for (ComplexMatrix& m : candidate)
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t k = 0; k < m.cols(); ++k) {
                    const cplx z = m(i, k) + cplx{rng.uniform(-step, step),
                                                  rng.uniform(-step, step)};
                    m(i, k) = cplx{std::clamp(z.real(), -scale, scale),
                                   std::clamp(z.imag(), -scale, scale)};
                }
        const CheckOutcome out = certificate_expression_outcome(p, candidate, tol);
        if (out.margin < best.margin) {
            tuple = std::move(candidate);
            best = out;
            consecutive_failures = 0;
        } else if (++consecutive_failures >= 20) {
            step *= 0.5;
            consecutive_failures = 0;
        }
    }

    if (cert.certified()) {
        if (best.holds) return std::nullopt;
        Violation v;
        v.margin = best.margin;
        v.instance = detail::certificate_trial_instance(p, tuple);
        return v;
    }

    // Refuted: the deterministic scalar witness achieves lambda_min exactly.
    Violation v;
    v.margin = cert.lambda_min;
    io::json witness_json{{"problem", io::to_json(p)}, {"witness", *cert.witness}};
    if (best.margin < v.margin) {
        v.margin = best.margin;
        v.instance = detail::certificate_trial_instance(p, tuple);
        v.instance["witness"] = *cert.witness;
    } else {
        v.instance = std::move(witness_json);
    }
    return v;
}

} // namespace bohr
