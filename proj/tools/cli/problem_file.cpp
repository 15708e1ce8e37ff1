#include "problem_file.hpp"

#include <fstream>
#include <sstream>

namespace cbvp::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw IoError(where + ": missing member \"" + key + "\"");
    return j.at(key);
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw IoError(what + " must be a number");
    return j.get<double>();
}

std::vector<double> number_array(const json& j, const std::string& what) {
    if (!j.is_array()) throw IoError(what + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(number(v, what));
    return out;
}

std::ifstream open(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path.string());
    return is;
}

fs::path resolve(const fs::path& base, const std::string& file) {
    fs::path p(file);
    return p.is_absolute() ? p : base / p;
}

Grid1D parse_axis_grid(const json& g, const char* count_key, const char* nodes_key, double length) {
    if (g.contains(nodes_key)) {
        Grid1D grid(number_array(g.at(nodes_key), std::string("grid.") + nodes_key));
        return grid;
    }
    const json& n = member(g, count_key, "grid");
    if (!n.is_number_integer() || n.get<long long>() < 0) throw IoError(std::string("grid.") + count_key + " must be a non-negative integer");
    return make_uniform_grid(n.get<std::size_t>(), 0.0, length);
}

// Reads `t,value` rows.
BoundaryFunction read_sample_file(const fs::path& path, Axis axis) {
    auto is = open(path);
    std::string line;
    std::vector<double> t;
    std::vector<double> v;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw IoError(path.string() + ": expected two columns");
        try {
            const double a = std::stod(line.substr(0, comma));
            const double b = std::stod(line.substr(comma + 1));
            t.push_back(a);
            v.push_back(b);
        } catch (const std::exception&) {
            if (!first) throw IoError(path.string() + ": bad number in '" + line + "'");
        }
        first = false;
    }
    return BoundaryFunction::sampled(axis, Grid1D(std::move(t)), std::move(v));
}

expr::Expr edge_expression(const std::string& text, Axis axis, const std::string& what) {
    expr::Expr e = expr::parse(text);
    const expr::Var own = axis == Axis::X1 ? expr::Var::X1 : expr::Var::X2;
    const expr::Var other = axis == Axis::X1 ? expr::Var::X2 : expr::Var::X1;
    if (expr::uses(e, other)) {
        throw IoError(what + ": expression must depend on " + axis_name(axis) + " only");
    }
    return expr::substitute(e, own, expr::variable(expr::Var::T));
}

}  // namespace

json read_json(const fs::path& path) {
    auto is = open(path);
    try {
        return json::parse(is);
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

Domain parse_domain(const json& j) {
    const json& d = member(j, "domain", "problem");
    return Domain::make(number(member(d, "h1", "domain"), "domain.h1"), number(member(d, "h2", "domain"), "domain.h2"));
}

SolverOptions parse_solver(const json& j) {
    SolverOptions o;
    if (!j.contains("solver")) return o;
    const json& s = j.at("solver");
    if (s.contains("method")) o.method = parse_method(s.at("method").get<std::string>());
    if (s.contains("tol")) o.tol = number(s.at("tol"), "solver.tol");
    if (s.contains("max_iter")) o.max_iter = s.at("max_iter").get<int>();
    if (s.contains("pivot_floor")) o.pivot_floor = number(s.at("pivot_floor"), "solver.pivot_floor");
    o.validate();
    return o;
}

namespace {

Coefficient parse_coefficient(const json& j, const fs::path& base, const std::string& what) {
    if (j.is_string()) return Coefficient(expr::parse(j.get<std::string>()));
    if (j.is_number()) return Coefficient(expr::literal(j.get<double>()));
    if (j.is_object() && j.contains("file")) {
        auto is = open(resolve(base, j.at("file").get<std::string>()));
        return Coefficient(read_csv(is));
    }
    throw IoError(what + ": expected an expression string or {\"file\": ...}");
}

}  // namespace

CoefficientSet parse_coefficients(const json& j, const fs::path& base_dir) {
    CoefficientSet set;
    if (!j.contains("coefficients")) return set;
    const json& c = j.at("coefficients");
    if (!c.is_object()) throw IoError("coefficients must be an object");
    for (const auto& [key, value] : c.items()) {
        int i1 = -1;
        int i2 = -1;
        char tail = 0;
        if (std::sscanf(key.c_str(), " %d , %d %c", &i1, &i2, &tail) != 2) {
            throw IoError("coefficient key \"" + key + "\" must have the form \"i1,i2\"");
        }
        if (i1 == 4 && i2 == 4) throw IoError("coefficient key \"4,4\" is not allowed: the leading coefficient is 1");
        set.set(i1, i2, parse_coefficient(value, base_dir, "coefficient " + key));
    }
    return set;
}

BoundaryFunction parse_boundary_function(const json& j, Axis axis, const Grid1D& axis_grid, const fs::path& base_dir,
                                         const std::string& what) {
    if (j.is_string()) return BoundaryFunction::analytic(axis, edge_expression(j.get<std::string>(), axis, what));
    if (j.is_number()) return BoundaryFunction::analytic(axis, expr::literal(j.get<double>()));
    if (!j.is_object()) throw IoError(what + ": expected an expression, {\"file\"}, {\"samples\"} or taylor form");
    if (j.contains("file")) return read_sample_file(resolve(base_dir, j.at("file").get<std::string>()), axis);
    const Grid1D grid = j.contains("nodes") ? Grid1D(number_array(j.at("nodes"), what + ".nodes")) : axis_grid;
    if (j.contains("coeffs")) {
        const auto c = number_array(j.at("coeffs"), what + ".coeffs");
        if (c.size() != 4) throw IoError(what + ".coeffs must have four entries");
        return BoundaryFunction::taylor(axis, number(member(j, "anchor", what), what + ".anchor"), {c[0], c[1], c[2], c[3]},
                                        grid, number_array(member(j, "density", what), what + ".density"));
    }
    if (j.contains("samples")) return BoundaryFunction::sampled(axis, grid, number_array(j.at("samples"), what + ".samples"));
    throw IoError(what + ": unrecognised boundary function object");
}

ProblemFile parse_problem(const json& doc, const fs::path& base_dir) {
    if (!doc.is_object()) throw IoError("problem file must be a JSON object");
    const Domain dom = parse_domain(doc);
    const json& g = member(doc, "grid", "problem");
    TensorGrid grid(parse_axis_grid(g, "n1", "x1", dom.h1), parse_axis_grid(g, "n2", "x2", dom.h2));
    grid.require_spans(dom);

    ProblemFile pf{doc, base_dir, dom, grid, parse_coefficients(doc, base_dir), Coefficient(), {}, {}, parse_solver(doc)};
    if (doc.contains("rhs")) pf.rhs = parse_coefficient(doc.at("rhs"), base_dir, "rhs");

    const bool has_c = doc.contains("classical_data");
    const bool has_n = doc.contains("nonclassical_data");
    if (has_c == has_n) throw IoError("exactly one of \"classical_data\" and \"nonclassical_data\" must be present");

    if (has_c) {
        const json& c = doc.at("classical_data");
        ClassicalData cd;
        for (int k = 0; k < 4; ++k) {
            const std::string pn = "phi" + std::to_string(k + 1);
            const std::string sn = "psi" + std::to_string(k + 1);
            cd.phi[k] = parse_boundary_function(member(c, pn.c_str(), "classical_data"), Axis::X2, grid.g2(), base_dir, pn);
            cd.psi[k] = parse_boundary_function(member(c, sn.c_str(), "classical_data"), Axis::X1, grid.g1(), base_dir, sn);
        }
        cd.validate(dom);
        pf.classical = std::move(cd);
    } else {
        const json& n = doc.at("nonclassical_data");
        NonClassicalData nc;
        const json& corner = member(n, "corner", "nonclassical_data");
        if (!corner.is_array() || corner.size() != 4) throw IoError("nonclassical_data.corner must be a 4x4 array");
        for (int i1 = 0; i1 < 4; ++i1) {
            const auto row = number_array(corner.at(i1), "nonclassical_data.corner");
            if (row.size() != 4) throw IoError("nonclassical_data.corner must be a 4x4 array");
            for (int i2 = 0; i2 < 4; ++i2) nc.corner[i1][i2] = row[i2];
        }
        const json& e1 = member(n, "edge_x1", "nonclassical_data");
        const json& e2 = member(n, "edge_x2", "nonclassical_data");
        if (!e1.is_array() || e1.size() != 4 || !e2.is_array() || e2.size() != 4) {
            throw IoError("nonclassical_data.edge_x1 and edge_x2 must have four entries each");
        }
        for (int k = 0; k < 4; ++k) {
            nc.edge_x1[k] = parse_boundary_function(e1.at(k), Axis::X1, grid.g1(), base_dir, "edge_x1[" + std::to_string(k) + "]");
            nc.edge_x2[k] = parse_boundary_function(e2.at(k), Axis::X2, grid.g2(), base_dir, "edge_x2[" + std::to_string(k) + "]");
        }
        nc.validate(dom);
        pf.nonclassical = std::move(nc);
    }
    return pf;
}

ProblemFile load_problem(const fs::path& path) { return parse_problem(read_json(path), path.parent_path()); }

MmsFile load_mms_case(const fs::path& path) {
    const json doc = read_json(path);
    MmsFile m{parse_domain(doc), expr::Expr(), parse_coefficients(doc, path.parent_path()), {}, parse_solver(doc)};
    const json& u = member(doc, "u_exact", "mms case");
    if (!u.is_string()) throw IoError("u_exact must be an expression string");
    m.u_exact = expr::parse(u.get<std::string>());
    if (doc.contains("sizes")) {
        for (const auto& s : doc.at("sizes")) m.sizes.push_back(s.get<std::size_t>());
    }
    return m;
}

json to_json(const BoundaryFunction& f, const Grid1D& axis_grid) {
    const expr::Var own = f.axis() == Axis::X1 ? expr::Var::X1 : expr::Var::X2;
    switch (f.kind()) {
        case BoundaryFunction::Kind::Analytic:
            return expr::print(expr::substitute(f.expression(), expr::Var::T, expr::variable(own)));
        case BoundaryFunction::Kind::Sampled: {
            json j;
            if (!f.grid()->same_nodes(axis_grid)) j["nodes"] = std::vector<double>(f.grid()->nodes().begin(), f.grid()->nodes().end());
            j["samples"] = f.values();
            return j;
        }
        case BoundaryFunction::Kind::Taylor: {
            json j;
            if (!f.grid()->same_nodes(axis_grid)) j["nodes"] = std::vector<double>(f.grid()->nodes().begin(), f.grid()->nodes().end());
            j["anchor"] = f.anchor();
            j["coeffs"] = f.coeffs();
            j["density"] = f.values();
            j["samples"] = f.sample(*f.grid());
            return j;
        }
    }
    return nullptr;
}

json to_json(const ClassicalData& cd, const TensorGrid& grid) {
    json j = json::object();
    for (int k = 0; k < 4; ++k) {
        j["phi" + std::to_string(k + 1)] = to_json(cd.phi[k], grid.g2());
        j["psi" + std::to_string(k + 1)] = to_json(cd.psi[k], grid.g1());
    }
    return j;
}

json to_json(const NonClassicalData& nc, const TensorGrid& grid) {
    json corner = json::array();
    for (const auto& row : nc.corner) corner.push_back(row);
    json e1 = json::array();
    json e2 = json::array();
    for (int k = 0; k < 4; ++k) {
        e1.push_back(to_json(nc.edge_x1[k], grid.g1()));
        e2.push_back(to_json(nc.edge_x2[k], grid.g2()));
    }
    return {{"corner", corner}, {"edge_x1", e1}, {"edge_x2", e2}};
}

}  // namespace cbvp::cli
