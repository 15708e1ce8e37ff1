#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoul(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cbvp::cli;

    CLI::App app{"Contact-boundary value problems for the (4,4) pseudoparabolic equation"};
    app.require_subcommand(1);

    std::string file;
    std::string out;
    std::string method;
    std::string to;
    std::string sizes;
    double tol = 0.0;
    int max_iter = 0;
    bool json = false;

    auto* check = app.add_subcommand("check", "Check the 16 corner agreement conditions of classical data");
    check->add_option("problem", file, "Problem file (JSON)")->required();
    check->add_option("--tol", tol, "Agreement tolerance")->default_val(1e-9);
    check->add_flag("--json", json, "Print the report as JSON");

    auto* convert = app.add_subcommand("convert", "Convert between classical and non-classical boundary data");
    convert->add_option("problem", file, "Problem file (JSON)")->required();
    convert->add_option("--to", to, "Target formulation")->required()->check(CLI::IsMember({"classical", "nonclassical"}));
    convert->add_option("--out", out, "Output problem file (default: stdout)");
    convert->add_option("--tol", tol, "Agreement tolerance for classical input")->default_val(1e-9);

    auto* solve = app.add_subcommand("solve", "Solve a problem and write the derivative jet");
    solve->add_option("problem", file, "Problem file (JSON)")->required();
    solve->add_option("--out", out, "Output directory")->required();
    solve->add_option("--method", method, "marching or picard")->check(CLI::IsMember({"marching", "picard"}));
    solve->add_option("--tol", tol, "Solver tolerance");
    solve->add_option("--max-iter", max_iter, "Picard iteration limit");

    auto* mms = app.add_subcommand("mms", "Manufactured-solution convergence study");
    mms->add_option("case", file, "Case file with u_exact (JSON)")->required();
    mms->add_option("--sizes", sizes, "Comma-separated grid sizes per axis, e.g. 17,33,65");
    mms->add_option("--out", out, "Write the convergence table as CSV");
    mms->add_option("--method", method, "marching or picard")->check(CLI::IsMember({"marching", "picard"}));
    mms->add_option("--tol", tol, "Solver tolerance");
    mms->add_option("--max-iter", max_iter, "Picard iteration limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kIoError;
    }

    auto flags_from = [&](CLI::App* sub) {
        SolveFlags f;
        if (!method.empty()) f.method = cbvp::parse_method(method);
        if (sub->count("--tol") > 0) f.tol = tol;
        if (sub->count("--max-iter") > 0) f.max_iter = max_iter;
        return f;
    };

    if (check->parsed()) return cmd_check(file, tol, json, std::cout, std::cerr);
    if (convert->parsed()) return cmd_convert(file, to, out, tol, std::cout, std::cerr);
    if (solve->parsed()) return cmd_solve(file, out, flags_from(solve), std::cout, std::cerr);
    if (mms->parsed()) {
        std::vector<std::size_t> list;
        try {
            list = parse_sizes(sizes);
        } catch (const std::exception&) {
            std::cerr << "error: --sizes must be a comma-separated list of integers\n";
            return kIoError;
        }
        return cmd_mms(file, list, flags_from(mms), out, std::cout, std::cerr);
    }
    return kIoError;
}
