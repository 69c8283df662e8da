#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "prelie/tables.hpp"

using namespace prelie;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDiscrepancies = 2;

std::vector<Rat> parse_rational_csv(const std::string& text) {
    std::vector<Rat> out;
    std::string item;
    for (char c : text + ",") {
        if (c == ',') {
            if (!item.empty()) out.push_back(parse_rational(item));
            item.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            item.push_back(c);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty rational list: " + text);
    return out;
}

AlgebraSpec load_algebra(const std::string& name, const std::optional<std::string>& alpha_text,
                         const std::optional<std::string>& file) {
    std::optional<Rat> alpha;
    if (alpha_text) alpha = parse_rational(*alpha_text);
    if (file) {
        std::ifstream in(*file);
        if (!in) throw std::runtime_error("cannot read algebra file: " + *file);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        AlgebraSpec A = algebra_from_json(text);
        if (alpha) A = A.specialize(*alpha);
        return A;
    }
    return catalog(name, alpha);
}

OperatorKind load_kind(const std::string& op, const std::optional<std::string>& weight) {
    std::optional<Rat> w;
    if (weight) w = parse_rational(*weight);
    return OperatorKind::parse(op, w);
}

void emit(const std::string& text, const std::optional<std::string>& out_path) {
    if (out_path) {
        std::ofstream out(*out_path);
        if (!out) throw std::runtime_error("cannot write: " + *out_path);
        out << text;
    } else {
        std::cout << text;
    }
}

ordered_json families_json(const SolveResult& result) {
    ordered_json j;
    ordered_json fams = ordered_json::array();
    for (const auto& f : result.families) fams.push_back(ordered_json::parse(f.to_json_string()));
    j["families"] = fams;
    j["dropped_branches"] = result.dropped_branches;
    return j;
}

int worker_count() {
    const char* env = std::getenv("PRELIE_WORKERS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n > 0 ? n : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact reconstruction and audit of Rota-type operators on the "
                 "two-dimensional complex pre-Lie algebras A1..A8"};
    app.require_subcommand(1);

    std::string algebra = "A1", op = "rota-baxter", format = "json", convention = "both";
    std::optional<std::string> weight, alpha, out_path, algebra_file, system_file;
    std::string grid_text, alpha_text;
    for (const auto& g : default_grid()) grid_text += (grid_text.empty() ? "" : ",") + format_rational(g);
    for (const auto& a : default_alpha_samples())
        alpha_text += (alpha_text.empty() ? "" : ",") + format_rational(a);

    auto add_algebra_opts = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--algebra", algebra, "Catalog algebra name A1..A8");
        if (required) opt->required();
        cmd->add_option("--alpha", alpha, "Parameter value p/q (required for A5/A6)");
        cmd->add_option("--algebra-file", algebra_file, "JSON algebra spec instead of the catalog");
    };
    auto add_kind_opts = [&](CLI::App* cmd) {
        cmd->add_option("--operator", op,
                        "Operator kind: rota-baxter, reynolds, nijenhuis, averaging")
            ->required();
        cmd->add_option("--weight", weight, "Rota-Baxter weight p/q (default 0)");
    };

    auto* cmd_catalog = app.add_subcommand("catalog", "List the eight catalog algebras");

    auto* cmd_check = app.add_subcommand("check-prelie", "Check the pre-Lie identities");
    add_algebra_opts(cmd_check, true);

    auto* cmd_build = app.add_subcommand("build-system", "Write an equation system as JSON");
    add_algebra_opts(cmd_build, true);
    add_kind_opts(cmd_build);
    cmd_build->add_option("--out", out_path, "Output path (default stdout)");

    auto* cmd_solve = app.add_subcommand("solve", "Solve an operator equation system exactly");
    add_algebra_opts(cmd_solve, false);
    add_kind_opts(cmd_solve);
    cmd_solve->add_option("--system-file", system_file, "Solve a build-system JSON dump instead");
    cmd_solve->add_option("--out", out_path, "Output path (default stdout)");

    auto* cmd_grid = app.add_subcommand("oracle-grid", "Enumerate exact grid solutions");
    add_algebra_opts(cmd_grid, true);
    add_kind_opts(cmd_grid);
    cmd_grid->add_option("--grid", grid_text, "Comma-separated rational grid values")
        ->capture_default_str();

    auto* cmd_verify = app.add_subcommand("verify-tables", "Audit published operator tables");
    cmd_verify->add_option("--algebra", algebra, "Restrict to one algebra");
    std::string verify_op;
    cmd_verify->add_option("--operator", verify_op, "Restrict to one operator kind");
    cmd_verify->add_option("--weight", weight, "Rota-Baxter weight for --operator rota-baxter");
    cmd_verify->add_option("--convention", convention, "row, column or both")
        ->check(CLI::IsMember({"row", "column", "both"}))
        ->capture_default_str();
    cmd_verify->add_option("--grid", grid_text, "Comma-separated rational grid values")
        ->capture_default_str();
    cmd_verify->add_option("--alpha-samples", alpha_text, "Comma-separated alpha samples")
        ->capture_default_str();
    cmd_verify->add_option("--format", format, "json or markdown")
        ->check(CLI::IsMember({"json", "markdown"}))
        ->capture_default_str();
    cmd_verify->add_option("--out", out_path, "Output path (default stdout)");

    auto* cmd_audit = app.add_subcommand(
        "audit-all", "Full discrepancy report over every algebra, kind and convention");
    cmd_audit->add_option("--grid", grid_text, "Comma-separated rational grid values")
        ->capture_default_str();
    cmd_audit->add_option("--alpha-samples", alpha_text, "Comma-separated alpha samples")
        ->capture_default_str();
    cmd_audit->add_option("--format", format, "json or markdown")
        ->check(CLI::IsMember({"json", "markdown"}))
        ->capture_default_str();
    cmd_audit->add_option("--out", out_path, "Output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_catalog->parsed()) {
            ordered_json j = ordered_json::array();
            for (const auto& name : catalog_names()) {
                ordered_json a;
                a["name"] = name;
                a["parametric"] = catalog_is_parametric(name);
                a["spec"] = ordered_json::parse(algebra_to_json(catalog(name)));
                j.push_back(std::move(a));
            }
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_check->parsed()) {
            AlgebraSpec A = load_algebra(algebra, alpha, algebra_file);
            bool left = is_left_prelie(A);
            bool right = is_right_prelie(A);
            std::size_t n = A.dim() * A.dim() * A.dim();
            std::cout << A.name() << ": left pre-Lie: " << (left ? "PASS" : "FAIL") << " (" << n
                      << "/" << n << " triples)"
                      << ", right pre-Lie: " << (right ? "PASS" : "FAIL") << "\n";
            auto lie = commutator_algebra(A);
            std::cout << "commutator Jacobi: " << (lie.jacobi_holds ? "PASS" : "FAIL") << "\n";
            return left ? kExitOk : kExitDiscrepancies;
        }

        if (cmd_build->parsed()) {
            AlgebraSpec A = load_algebra(algebra, alpha, algebra_file);
            EquationSystem sys = build_system(A, load_kind(op, weight));
            emit(sys.to_json() + "\n", out_path);
            return kExitOk;
        }

        if (cmd_solve->parsed()) {
            EquationSystem sys = [&] {
                if (system_file) {
                    std::ifstream in(*system_file);
                    if (!in) throw std::runtime_error("cannot read: " + *system_file);
                    std::string text((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
                    return EquationSystem::from_json(text);
                }
                AlgebraSpec A = load_algebra(algebra, alpha, algebra_file);
                return build_system(A, load_kind(op, weight));
            }();
            SolveResult result = solve_families(sys);
            emit(families_json(result).dump(2) + "\n", out_path);
            return kExitOk;
        }

        if (cmd_grid->parsed()) {
            AlgebraSpec A = load_algebra(algebra, alpha, algebra_file);
            EquationSystem sys = build_system(A, load_kind(op, weight));
            auto pts = grid_enumerate(sys, parse_rational_csv(grid_text));
            ordered_json j = ordered_json::array();
            for (const auto& m : pts) j.push_back(matrix_to_string(m));
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }

        if (cmd_verify->parsed() || cmd_audit->parsed()) {
            std::optional<std::string> only_algebra;
            std::optional<OperatorKind> only_kind;
            std::optional<Convention> only_convention;
            if (cmd_verify->parsed()) {
                if (cmd_verify->count("--algebra")) only_algebra = algebra;
                if (!verify_op.empty()) only_kind = load_kind(verify_op, weight);
                if (convention != "both") only_convention = parse_convention(convention);
            }
            AuditReport report =
                audit_all(parse_rational_csv(grid_text), parse_rational_csv(alpha_text),
                          worker_count(), only_algebra, only_kind, only_convention);
            emit(format == "json" ? report.to_json() : report.to_markdown(), out_path);
            return report.has_discrepancies() ? kExitDiscrepancies : kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
