#include "commands.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "cbvp/verification.hpp"
#include "problem_file.hpp"

namespace cbvp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Maps every error type onto the documented exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const InconsistentData& e) {
        err << "error: " << e.what() << '\n' << e.report().render_text();
        return kValidationFailure;
    } catch (const ConvergenceFailure& e) {
        err << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const SingularMarch& e) {
        err << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const StudyFailure& e) {
        err << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const json::exception& e) {
        err << "error: malformed problem file: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path.string());
    os << text;
    if (!os) throw IoError("write failed for " + path.string());
}

void apply_flags(SolverOptions& o, const SolveFlags& f) {
    if (f.method) o.method = *f.method;
    if (f.tol) o.tol = *f.tol;
    if (f.max_iter) o.max_iter = *f.max_iter;
    o.validate();
}

}  // namespace

int cmd_check(const fs::path& problem, double tol, bool as_json, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ProblemFile pf = load_problem(problem);
        if (!pf.classical) {
            err << "error: " << problem.string()
                << " holds non-classical data; these need no agreement conditions, so there is nothing to check\n";
            return int(kIoError);
        }
        const AgreementReport rep = check_agreement(*pf.classical, pf.dom.h1, tol);
        if (as_json) {
            out << rep.to_json().dump(2) << '\n';
        } else {
            out << rep.render_text();
        }
        return rep.pass ? int(kOk) : int(kValidationFailure);
    });
}

int cmd_convert(const fs::path& problem, const std::string& to, const fs::path& out_file, double tol, std::ostream& out,
                std::ostream& err) {
    return guarded(err, [&] {
        if (to != "classical" && to != "nonclassical") {
            err << "error: --to must be 'classical' or 'nonclassical'\n";
            return int(kIoError);
        }
        const ProblemFile pf = load_problem(problem);
        json doc = pf.doc;
        if (to == "nonclassical") {
            if (!pf.classical) {
                err << "error: " << problem.string() << " has no classical_data to convert\n";
                return int(kIoError);
            }
            const NonClassicalData nc = classical_to_nonclassical(*pf.classical, pf.dom.h1, tol);
            doc.erase("classical_data");
            doc["nonclassical_data"] = to_json(nc, pf.grid);
        } else {
            if (!pf.nonclassical) {
                err << "error: " << problem.string() << " has no nonclassical_data to convert\n";
                return int(kIoError);
            }
            const ClassicalData cd = nonclassical_to_classical(*pf.nonclassical, pf.dom, pf.grid);
            doc.erase("nonclassical_data");
            doc["classical_data"] = to_json(cd, pf.grid);
        }
        const std::string text = doc.dump(2) + "\n";
        if (out_file.empty()) {
            out << text;
        } else {
            write_text(out_file, text);
            out << "wrote " << out_file.string() << '\n';
        }
        return int(kOk);
    });
}

int cmd_solve(const fs::path& problem, const fs::path& out_dir, const SolveFlags& flags, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&] {
        ProblemFile pf = load_problem(problem);
        SolverOptions opts = pf.solver;
        apply_flags(opts, flags);

        Problem prob{pf.dom, pf.coeffs, pf.rhs, NonClassicalData::zero()};
        if (pf.classical) {
            prob.data = classical_to_nonclassical(*pf.classical, pf.dom.h1, flags.agreement_tol);
        } else {
            prob.data = *pf.nonclassical;
        }

        const SolveResult res = solve(prob, pf.grid, opts);
        const ResidualReport r = residual(res.jet, prob, 2.0);

        fs::create_directories(out_dir);
        for (int i1 = 0; i1 <= 4; ++i1) {
            for (int i2 = 0; i2 <= 4; ++i2) {
                std::ostringstream os;
                write_csv(os, res.jet.d(i1, i2));
                write_text(out_dir / ("d_" + std::to_string(i1) + "_" + std::to_string(i2) + ".csv"), os.str());
            }
        }
        {
            std::ostringstream os;
            write_csv(os, r.r);
            write_text(out_dir / "residual.csv", os.str());
        }
        const json stats = {{"method", method_name(opts.method)},
                            {"iterations", res.stats.iterations},
                            {"update_norm", res.stats.update_norm},
                            {"fixed_point_residual", res.stats.residual_norm},
                            {"residual_sup", r.sup},
                            {"residual_l2", r.lp},
                            {"wall_ms", res.stats.wall_ms}};
        write_text(out_dir / "stats.json", stats.dump(2) + "\n");

        out << "solved " << pf.grid.n1() << "x" << pf.grid.n2() << " grid with " << method_name(opts.method) << " in "
            << res.stats.iterations << " iteration(s)\n"
            << "residual sup " << format_real(r.sup) << ", L2 " << format_real(r.lp) << '\n'
            << "wrote 25 jet grids, residual.csv and stats.json to " << out_dir.string() << '\n';
        return int(kOk);
    });
}

int cmd_mms(const fs::path& case_file, std::vector<std::size_t> sizes, const SolveFlags& flags, const fs::path& out_csv,
            std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const MmsFile mf = load_mms_case(case_file);
        if (expr::contains_step(mf.u_exact)) {
            err << "error: u_exact must be step-free (it is differentiated symbolically)\n";
            return int(kIoError);
        }
        if (sizes.empty()) sizes = mf.sizes;
        if (sizes.empty()) sizes = {17, 33, 65};
        SolverOptions opts = mf.solver;
        apply_flags(opts, flags);

        const auto rows = convergence_study(MmsCase{mf.u_exact, mf.coeffs, mf.dom}, sizes, opts);
        out << convergence_text(rows);
        const std::string csv = convergence_csv(rows);
        if (out_csv.empty()) {
            out << '\n' << csv;
        } else {
            write_text(out_csv, csv);
        }

        bool all_small = true;
        for (const auto& r : rows) all_small = all_small && r.sup_err <= 1e-9;
        const auto& last = rows.back().order;
        const bool order_ok = last && *last >= 1.9;
        out << (all_small ? "all errors at or below 1e-9\n"
                          : order_ok ? "observed order >= 1.9\n" : "observed order below 1.9\n");
        return all_small || order_ok ? int(kOk) : int(kValidationFailure);
    });
}

}  // namespace cbvp::cli
