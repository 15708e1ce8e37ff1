#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cbvp/volterra_solver.hpp"

namespace cbvp::cli {

enum ExitStatus : int {
    kOk = 0,
    kValidationFailure = 1,
    kSolverFailure = 2,
    kIoError = 3,
};

struct SolveFlags {
    std::optional<Method> method;
    std::optional<double> tol;
    std::optional<int> max_iter;
    double agreement_tol = 1e-9;
};

int cmd_check(const std::filesystem::path& problem, double tol, bool json, std::ostream& out, std::ostream& err);

/// `to` is "classical" or "nonclassical". Writes to `out_file`, or to `out` when empty.
int cmd_convert(const std::filesystem::path& problem, const std::string& to, const std::filesystem::path& out_file,
                double tol, std::ostream& out, std::ostream& err);

int cmd_solve(const std::filesystem::path& problem, const std::filesystem::path& out_dir, const SolveFlags& flags,
              std::ostream& out, std::ostream& err);

/// Empty `sizes` falls back to the case file's "sizes", then to 17, 33, 65.
int cmd_mms(const std::filesystem::path& case_file, std::vector<std::size_t> sizes, const SolveFlags& flags,
            const std::filesystem::path& out_csv, std::ostream& out, std::ostream& err);

}  // namespace cbvp::cli
