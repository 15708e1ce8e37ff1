#pragma once

// JSON problem files.
//
// {
//   "domain": {"h1": 1, "h2": 1},
//   "grid": {"n1": 33, "n2": 33}            or {"x1": [...], "x2": [...]},
//   "coefficients": {"0,0": "1 + step(x1 - 0.5)", "3,3": {"file": "a33.csv"}},
//   "rhs": "x1^3*x2^3",
//   "classical_data": {"phi1": "...", ..., "psi4": "..."}
//     or
//   "nonclassical_data": {"corner": [[...] x4], "edge_x1": [4 entries], "edge_x2": [4 entries]},
//   "solver": {"method": "marching", "tol": 1e-10, "max_iter": 200}
// }
//
// Boundary function entries are expressions in the edge variable (x1 or x2,
// `t` also accepted), {"file": "f.csv"} with a `t,value` CSV, {"samples": [...]}
// on the problem grid (optional "nodes"), or the reconstructed form
// {"anchor": a, "coeffs": [4], "density": [...]}.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cbvp/boundary_data.hpp"
#include "cbvp/operator.hpp"
#include "cbvp/volterra_solver.hpp"

namespace cbvp::cli {

/// Unreadable files, malformed JSON or schema violations.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProblemFile {
    nlohmann::json doc;
    std::filesystem::path base_dir;
    Domain dom;
    TensorGrid grid;
    CoefficientSet coeffs;
    Coefficient rhs;
    std::optional<ClassicalData> classical;
    std::optional<NonClassicalData> nonclassical;
    SolverOptions solver;
};

nlohmann::json read_json(const std::filesystem::path& path);

ProblemFile parse_problem(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ProblemFile load_problem(const std::filesystem::path& path);

struct MmsFile {
    Domain dom;
    expr::Expr u_exact;
    CoefficientSet coeffs;
    std::vector<std::size_t> sizes;
    SolverOptions solver;
};

MmsFile load_mms_case(const std::filesystem::path& path);

Domain parse_domain(const nlohmann::json& j);
CoefficientSet parse_coefficients(const nlohmann::json& j, const std::filesystem::path& base_dir);
SolverOptions parse_solver(const nlohmann::json& j);
BoundaryFunction parse_boundary_function(const nlohmann::json& j, Axis axis, const Grid1D& axis_grid,
                                         const std::filesystem::path& base_dir, const std::string& what);

nlohmann::json to_json(const BoundaryFunction& f, const Grid1D& axis_grid);
nlohmann::json to_json(const ClassicalData& cd, const TensorGrid& grid);
nlohmann::json to_json(const NonClassicalData& nc, const TensorGrid& grid);

}  // namespace cbvp::cli
