#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bohr/catalog.hpp"
#include "bohr/jensen.hpp"
#include "bohr/majorization.hpp"

namespace bohr::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Serialization. Complex entries travel as [re, im] pairs; matrices are
// row-major with explicit "rows"/"cols". nlohmann's object keys are sorted
// and doubles print as the shortest round-trip decimal, so identical values
// serialize to identical bytes.
// ---------------------------------------------------------------------------

inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw BadParam(where + ": complex scalar must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (const cplx& z : m.entries()) entries.push_back(to_json(z));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw BadParam(where + ": matrix needs rows, cols, entries");
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows * cols)
        throw BadParam(where + ": entries length != rows*cols");
    std::vector<cplx> data;
    data.reserve(entries.size());
    for (const json& e : entries) data.push_back(complex_from_json(e, where + ".entries"));
    return ComplexMatrix(rows, cols, std::move(data));
}

inline std::vector<double> real_vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw BadParam(where + ": expected a non-empty array");
    std::vector<double> v;
    v.reserve(j.size());
    for (const json& e : j) {
        if (!e.is_number()) throw BadParam(where + ": expected real numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

inline std::vector<cplx> complex_vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw BadParam(where + ": expected a non-empty array");
    std::vector<cplx> v;
    v.reserve(j.size());
    for (const json& e : j) v.push_back(complex_from_json(e, where));
    return v;
}

inline json to_json(const ScalarFunction& f) {
    switch (f.kind) {
    case ScalarFunction::Kind::AbsPower: return json{{"kind", "abs_power"}, {"r", f.r}};
    case ScalarFunction::Kind::Power: return json{{"kind", "power"}, {"r", f.r}};
    case ScalarFunction::Kind::Polynomial:
        return json{{"kind", "polynomial"}, {"coeffs", f.coeffs}};
    }
    throw BadParam("to_json: unknown scalar function kind");
}

inline ScalarFunction scalar_function_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind"))
        throw BadParam(where + ": scalar function needs a kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "abs_power") return ScalarFunction::abs_power(j.at("r").get<double>());
    if (kind == "power") return ScalarFunction::power(j.at("r").get<double>());
    if (kind == "polynomial")
        return ScalarFunction::polynomial(real_vector_from_json(j.at("coeffs"), where));
    throw BadParam(where + ": unknown scalar function kind '" + kind + "'");
}

inline json to_json(const PositiveLinearMap& m) {
    switch (m.kind) {
    case PositiveLinearMap::Kind::Congruence:
        return json{{"kind", "congruence"}, {"X", to_json(m.factor)}};
    case PositiveLinearMap::Kind::VectorState: {
        json x = json::array();
        for (const cplx& z : m.state) x.push_back(to_json(z));
        return json{{"kind", "vector_state"}, {"x", std::move(x)}};
    }
    case PositiveLinearMap::Kind::Scale:
        return json{{"kind", "scale"}, {"w", m.weight}, {"dim", m.input_dim}};
    case PositiveLinearMap::Kind::Pinch:
        return json{{"kind", "pinch"}, {"indices", m.block}, {"dim", m.input_dim}};
    }
    throw BadParam("to_json: unknown map kind");
}

inline PositiveLinearMap map_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind")) throw BadParam(where + ": map needs a kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "congruence")
        return PositiveLinearMap::congruence(matrix_from_json(j.at("X"), where + ".X"));
    if (kind == "vector_state")
        return PositiveLinearMap::vector_state(complex_vector_from_json(j.at("x"), where + ".x"));
    if (kind == "scale")
        return PositiveLinearMap::scale(j.at("w").get<double>(), j.at("dim").get<std::size_t>());
    if (kind == "pinch") {
        std::vector<std::size_t> idx;
        for (const json& e : j.at("indices")) idx.push_back(e.get<std::size_t>());
        return PositiveLinearMap::pinch(std::move(idx), j.at("dim").get<std::size_t>());
    }
    throw BadParam(where + ": unknown map kind '" + kind + "'");
}

inline json to_json(const QuadraticCertificateProblem& p) {
    json terms = json::array();
    for (const auto& t : p.terms)
        terms.push_back(json{{"sign", t.sign}, {"coeffs", t.coeffs}});
    return json{{"n", p.n}, {"diag", p.diag}, {"terms", std::move(terms)}};
}

inline QuadraticCertificateProblem problem_from_json(const json& j, const std::string& where) {
    QuadraticCertificateProblem p;
    p.n = j.at("n").get<std::size_t>();
    p.diag = real_vector_from_json(j.at("diag"), where + ".diag");
    if (j.contains("terms")) {
        for (const json& t : j.at("terms")) {
            QuadraticCertificateProblem::Term term;
            term.sign = t.at("sign").get<int>();
            term.coeffs = real_vector_from_json(t.at("coeffs"), where + ".terms.coeffs");
            p.terms.push_back(std::move(term));
        }
    }
    p.validate();
    return p;
}

inline json to_json(const CheckOutcome& out) {
    json j{{"holds", out.holds}, {"margin", out.margin}};
    if (out.residual) j["residual"] = *out.residual;
    if (out.hypothesis_failed) j["hypothesis_failed"] = true;
    return j;
}

inline json to_json(const CertificateResult& result) {
    json j{{"status", result.certified() ? "certified" : "refuted"},
           {"lambda_min", result.lambda_min}};
    json rows = json::array();
    for (std::size_t i = 0; i < result.coeff_matrix.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < result.coeff_matrix.cols(); ++k)
            row.push_back(result.coeff_matrix(i, k).real());
        rows.push_back(std::move(row));
    }
    j["coefficient_matrix"] = std::move(rows);
    if (result.witness) j["witness"] = *result.witness;
    return j;
}

inline json to_json(const JensenInstance& inst) {
    json maps = json::array(), ops = json::array();
    for (const auto& m : inst.maps) maps.push_back(to_json(m));
    for (const auto& a : inst.operators) ops.push_back(to_json(a));
    json j{{"id", "jensen_bohr"},
           {"r", inst.r},
           {"a", inst.weights},
           {"maps", std::move(maps)},
           {"operators", std::move(ops)}};
    if (inst.k_constant) j["k"] = *inst.k_constant;
    return j;
}

inline json to_json(const SpectraInstance& inst) {
    json j = to_json(inst.base);
    j["id"] = "spectra_jensen";
    return j;
}

inline json to_json(const MajorizationInstance& inst) {
    json xs = json::array(), as = json::array();
    for (const auto& x : inst.factors) xs.push_back(to_json(x));
    for (const auto& a : inst.operators) as.push_back(to_json(a));
    return json{{"r", inst.r},
                {"weights", inst.weights},
                {"f", to_json(inst.f)},
                {"X", std::move(xs)},
                {"A", std::move(as)}};
}

// ---------------------------------------------------------------------------
// Instance loading: each id validates its own arity and parameter domains.
// ---------------------------------------------------------------------------

inline JensenInstance jensen_instance_from_json(const json& j) {
    JensenInstance inst;
    inst.r = j.at("r").get<double>();
    inst.weights = real_vector_from_json(j.at("a"), "a");
    for (const json& m : j.at("maps")) inst.maps.push_back(map_from_json(m, "maps"));
    for (const json& a : j.at("operators"))
        inst.operators.push_back(matrix_from_json(a, "operators"));
    if (j.contains("k")) inst.k_constant = j.at("k").get<double>();
    inst.validate();
    return inst;
}

inline MajorizationInstance majorization_instance_from_json(const json& j) {
    MajorizationInstance inst;
    if (j.contains("r")) inst.r = j.at("r").get<double>();
    inst.weights = real_vector_from_json(j.contains("weights") ? j.at("weights")
                                                               : j.at(j.contains("alpha") ? "alpha" : "p"),
                                         "weights");
    if (j.contains("f")) inst.f = scalar_function_from_json(j.at("f"), "f");
    for (const json& x : j.at("X")) inst.factors.push_back(matrix_from_json(x, "X"));
    for (const json& a : j.at("A")) inst.operators.push_back(matrix_from_json(a, "A"));
    inst.validate();
    return inst;
}

// Certificate problems arrive either raw ({n, diag, terms}) or as a template
// instance ({id, parameters}) that compiles down to one.
inline QuadraticCertificateProblem certificate_problem_from_json(const json& j) {
    if (j.contains("n") && j.contains("diag")) return problem_from_json(j, "problem");
    const std::string id = j.at("id").get<std::string>();
    if (id == "thm22") {
        const std::string dir = j.value("direction", "standard");
        const std::string sign = j.value("sign", "minus_plus");
        if (dir != "standard" && dir != "reverse")
            throw BadParam("thm22: direction must be standard|reverse");
        if (sign != "minus_plus" && sign != "plus_minus")
            throw BadParam("thm22: sign must be minus_plus|plus_minus");
        return thm22_template(j.at("t").get<double>(),
                              dir == "standard" ? Thm22Direction::Standard
                                                : Thm22Direction::Reverse,
                              sign == "minus_plus" ? Thm22Sign::MinusPlus
                                                   : Thm22Sign::PlusMinus);
    }
    if (id == "cor2x2")
        return cor2x2_template(real_vector_from_json(j.at("a"), "a"),
                               real_vector_from_json(j.at("b"), "b"),
                               real_vector_from_json(j.at("p"), "p"));
    if (id == "chansangiam") {
        std::vector<ParamVector> cols;
        for (const json& c : j.at("alpha")) cols.push_back(real_vector_from_json(c, "alpha"));
        return chansangiam_template(cols, real_vector_from_json(j.at("p"), "p"));
    }
    if (id == "zhang_convex")
        return zhang_convex_template(real_vector_from_json(j.at("t"), "t"));
    if (id == "jensen_squares")
        return jensen_squares_template(real_vector_from_json(j.at("r"), "r"));
    throw BadParam("certificate problem: id '" + id + "' is not a certificate template");
}

inline std::vector<ComplexMatrix> operator_list_from_json(const json& j,
                                                          const std::string& where) {
    std::vector<ComplexMatrix> ops;
    for (const json& a : j) ops.push_back(matrix_from_json(a, where));
    if (ops.empty()) throw BadParam(where + ": empty operator list");
    return ops;
}

// Evaluates any named check on a parsed instance. Template ids certify their
// coefficient matrix unless the instance supplies an explicit operator tuple,
// in which case the operator expression is evaluated on it.
inline CheckOutcome run_inequality_check(const json& j, const Tolerance& tol = {}) {
    const std::string id = j.at("id").get<std::string>();

    if (id == "classical_bohr")
        return check_classical_bohr(complex_from_json(j.at("a"), "a"),
                                    complex_from_json(j.at("b"), "b"),
                                    j.at("p").get<double>(), j.at("q").get<double>(), tol);
    if (id == "hirzallah11")
        return check_hirzallah(matrix_from_json(j.at("A"), "A"), matrix_from_json(j.at("B"), "B"),
                               j.at("p").get<double>(), j.at("q").get<double>(), tol);
    if (id == "hirzallah_norm")
        return check_hirzallah_norm(matrix_from_json(j.at("A"), "A"),
                                    matrix_from_json(j.at("B"), "B"), j.at("p").get<double>(),
                                    j.at("q").get<double>(), matrix_from_json(j.at("X"), "X"),
                                    j.at("gamma").get<double>(), tol);
    if (id == "zhang_identity")
        return residual_identity(InequalityId::ZhangIdentity, matrix_from_json(j.at("A"), "A"),
                                 matrix_from_json(j.at("B"), "B"), j.at("p").get<double>(),
                                 j.at("q").get<double>(), tol);
    if (id == "parallelogram")
        return residual_identity(InequalityId::Parallelogram, matrix_from_json(j.at("A"), "A"),
                                 matrix_from_json(j.at("B"), "B"), j.at("t").get<double>(), 0.0,
                                 tol);
    if (id == "thm22" || id == "cor2x2" || id == "chansangiam" || id == "zhang_convex" ||
        id == "jensen_squares") {
        const QuadraticCertificateProblem p = certificate_problem_from_json(j);
        if (j.contains("operators"))
            return certificate_expression_outcome(
                p, operator_list_from_json(j.at("operators"), "operators"), tol);
        const CertificateResult cert = certify(p, tol);
        CheckOutcome out;
        out.holds = cert.certified();
        out.margin = cert.lambda_min;
        return out;
    }
    if (id == "vasic_keckic_scalar")
        return check_vasic_keckic_scalar(complex_vector_from_json(j.at("z"), "z"),
                                         real_vector_from_json(j.at("a"), "a"),
                                         j.at("r").get<double>(), tol);
    if (id == "rassias_pecaric") {
        std::vector<std::vector<double>> xs;
        for (const json& x : j.at("x")) xs.push_back(real_vector_from_json(x, "x"));
        return check_rassias_pecaric(xs, real_vector_from_json(j.at("p"), "p"),
                                     scalar_function_from_json(j.at("f"), "f"), tol);
    }
    if (id == "monotonic_f") {
        std::vector<std::vector<ComplexMatrix>> tuples;
        for (const json& t : j.at("tuples"))
            tuples.push_back(operator_list_from_json(t, "tuples"));
        return check_monotonic_F(real_vector_from_json(j.at("a"), "a"),
                                 real_vector_from_json(j.at("b"), "b"), tuples, tol);
    }
    if (id == "jensen_bohr") return check_jensen_bohr(jensen_instance_from_json(j), tol);
    if (id == "spectra_jensen")
        return check_spectra_jensen(make_spectra_instance(jensen_instance_from_json(j), tol),
                                    tol);
    if (id == "operator_jensen") {
        std::vector<PositiveLinearMap> maps;
        for (const json& m : j.at("maps")) maps.push_back(map_from_json(m, "maps"));
        const std::string mode = j.value("mode", "operator_convex");
        if (mode != "operator_convex" && mode != "spectra_condition")
            throw BadParam("operator_jensen: mode must be operator_convex|spectra_condition");
        return check_operator_jensen(maps,
                                     operator_list_from_json(j.at("operators"), "operators"),
                                     scalar_function_from_json(j.at("f"), "f"),
                                     mode == "operator_convex" ? JensenMode::OperatorConvex
                                                               : JensenMode::SpectraCondition,
                                     tol);
    }
    if (id == "major_jensen")
        return check_major_jensen(majorization_instance_from_json(j), tol);
    if (id == "eigen_bohr") return check_eigen_bohr(majorization_instance_from_json(j), tol);

    throw BadParam("unknown inequality id '" + id + "'");
}

// ---------------------------------------------------------------------------
// Files and canonical output.
// ---------------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParam("cannot open '" + path + "'");
    return json::parse(in); // parse errors carry byte positions
}

inline std::string canonical_dump(const json& j, bool pretty = false) {
    return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
}

// FNV-1a 64-bit digest, hex-encoded.
inline std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

} // namespace bohr::io
