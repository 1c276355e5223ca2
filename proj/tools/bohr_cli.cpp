// bohr: certify, check, fuzz, falsify, and majorize Bohr-type operator
// inequalities over JSON instances. Exit codes: 0 = certified/holds/no
// violation, 2 = refuted/violation found, 1 = usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bohr/bohr.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

bohr::Tolerance tolerance_from_env() {
    bohr::Tolerance tol;
    double atol = tol.atol, rtol = tol.rtol;
    if (const char* a = std::getenv("BOHR_TOL_ATOL")) atol = std::stod(a);
    if (const char* r = std::getenv("BOHR_TOL_RTOL")) rtol = std::stod(r);
    return bohr::Tolerance(atol, rtol);
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bohr::BadParam("cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int emit_report(const bohr::io::json& command_echo, const bohr::io::json& outcome,
                const std::string& input_digest, const bohr::Tolerance& tol,
                const std::string& out_path, bool pretty, int exit_code) {
    bohr::io::json report{{"command", command_echo},
                          {"input_digest", input_digest},
                          {"outcome", outcome},
                          {"tolerance", {{"atol", tol.atol}, {"rtol", tol.rtol}}},
                          {"version", kVersion}};
    const std::string text = bohr::io::canonical_dump(report, pretty);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw bohr::BadParam("cannot write '" + out_path + "'");
        out << text;
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bohr-type operator inequality toolkit"};
    app.require_subcommand(1);

    std::string instance_path, inequality_id, out_path;
    std::size_t dim = 4, trials = 100, iters = 200;
    std::uint64_t seed = 0;
    bool pretty = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the JSON report to this path");
        cmd->add_flag("--pretty", pretty, "indent the JSON report");
    };

    CLI::App* certify_cmd = app.add_subcommand("certify", "certify a quadratic problem");
    certify_cmd->add_option("--instance", instance_path, "problem or template JSON")->required();
    add_common(certify_cmd);

    CLI::App* check_cmd = app.add_subcommand("check", "evaluate one inequality instance");
    check_cmd->add_option("--instance", instance_path, "instance JSON")->required();
    check_cmd->add_option("--inequality", inequality_id, "expected inequality id");
    add_common(check_cmd);

    CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "random property trials for a check");
    fuzz_cmd->add_option("--inequality", inequality_id, "check designator")->required();
    fuzz_cmd->add_option("--instance", instance_path, "optional fixed parameters JSON");
    fuzz_cmd->add_option("--dim", dim, "operator dimension");
    fuzz_cmd->add_option("--trials", trials, "number of trials");
    fuzz_cmd->add_option("--seed", seed, "master seed");
    add_common(fuzz_cmd);

    CLI::App* falsify_cmd = app.add_subcommand("falsify", "search for a violating tuple");
    falsify_cmd->add_option("--instance", instance_path, "problem or template JSON")->required();
    falsify_cmd->add_option("--dim", dim, "operator dimension");
    falsify_cmd->add_option("--iters", iters, "hill-climbing iterations");
    falsify_cmd->add_option("--seed", seed, "search seed");
    add_common(falsify_cmd);

    CLI::App* majorize_cmd = app.add_subcommand("majorize", "eigenvalue partial-sum checks");
    majorize_cmd->add_option("--instance", instance_path, "instance JSON")->required();
    add_common(majorize_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const bohr::Tolerance tol = tolerance_from_env();

        if (certify_cmd->parsed()) {
            const std::string bytes = read_file_bytes(instance_path);
            const auto problem =
                bohr::io::certificate_problem_from_json(bohr::io::json::parse(bytes));
            const bohr::CertificateResult result = bohr::certify(problem, tol);
            const bohr::io::json echo{{"command", "certify"}, {"instance", instance_path}};
            return emit_report(echo, bohr::io::to_json(result), bohr::io::fnv1a_digest(bytes),
                               tol, out_path, pretty, result.certified() ? 0 : 2);
        }

        if (check_cmd->parsed() || majorize_cmd->parsed()) {
            const std::string bytes = read_file_bytes(instance_path);
            bohr::io::json inst = bohr::io::json::parse(bytes);
            if (!inequality_id.empty()) {
                if (inst.contains("id") && inst.at("id").get<std::string>() != inequality_id)
                    throw bohr::BadParam("--inequality disagrees with the instance id");
                inst["id"] = inequality_id;
            }
            const std::string id = inst.at("id").get<std::string>();
            if (majorize_cmd->parsed() && id != "major_jensen" && id != "eigen_bohr")
                throw bohr::BadParam("majorize handles major_jensen and eigen_bohr instances");
            const bohr::CheckOutcome outcome = bohr::io::run_inequality_check(inst, tol);
            if (outcome.hypothesis_failed) {
                std::cerr << "bohr: instance fails the hypothesis of '" << id << "'\n";
                return 1;
            }
            const bohr::io::json echo{
                {"command", majorize_cmd->parsed() ? "majorize" : "check"},
                {"inequality", id},
                {"instance", instance_path}};
            return emit_report(echo, bohr::io::to_json(outcome), bohr::io::fnv1a_digest(bytes),
                               tol, out_path, pretty, outcome.holds ? 0 : 2);
        }

        if (fuzz_cmd->parsed()) {
            bohr::io::json params = bohr::io::json::object();
            std::string digest_source;
            if (!instance_path.empty()) {
                digest_source = read_file_bytes(instance_path);
                params = bohr::io::json::parse(digest_source);
            }
            bohr::FuzzConfig cfg;
            cfg.dim = dim;
            cfg.trials = trials;
            cfg.seed = seed;
            const bohr::FuzzReport report = bohr::fuzz(inequality_id, cfg, params, tol);
            const bohr::io::json echo{{"command", "fuzz"},
                                      {"inequality", inequality_id},
                                      {"dim", dim},
                                      {"trials", trials},
                                      {"seed", seed}};
            if (digest_source.empty()) digest_source = bohr::io::canonical_dump(echo);
            return emit_report(echo, bohr::io::to_json(report),
                               bohr::io::fnv1a_digest(digest_source), tol, out_path, pretty,
                               report.violations.empty() ? 0 : 2);
        }

        if (falsify_cmd->parsed()) {
            const std::string bytes = read_file_bytes(instance_path);
            const auto problem =
                bohr::io::certificate_problem_from_json(bohr::io::json::parse(bytes));
            const std::optional<bohr::Violation> violation =
                bohr::falsify(problem, dim, iters, seed, tol);
            bohr::io::json outcome;
            if (violation) {
                outcome = bohr::io::json{{"violation_found", true},
                                         {"margin", violation->margin},
                                         {"instance", violation->instance}};
            } else {
                outcome = bohr::io::json{{"violation_found", false}};
            }
            const bohr::io::json echo{{"command", "falsify"},
                                      {"instance", instance_path},
                                      {"dim", dim},
                                      {"iters", iters},
                                      {"seed", seed}};
            return emit_report(echo, outcome, bohr::io::fnv1a_digest(bytes), tol, out_path,
                               pretty, violation ? 2 : 0);
        }
    } catch (const bohr::io::json::exception& e) {
        std::cerr << "bohr: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "bohr: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
