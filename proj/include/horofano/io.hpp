#ifndef HOROFANO_IO_HPP
#define HOROFANO_IO_HPP

#include "horofano/ma_continuity.hpp"
#include "horofano/polytope.hpp"
#include "horofano/problem.hpp"
#include "horofano/soliton.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace horofano {

inline constexpr const char* kToolName = "horofano";
inline constexpr const char* kToolVersion = "0.1.0";

/// Solver settings from the "options" block of a problem file.
struct ProblemOptions {
    double tol = 1e-10;
    int grid = 2001;
    double box = 0;
    double t0 = 0.1;
    int quad_order = 0;
    double quad_rel_tol = 1e-12;
};

struct LoadedProblem {
    HorosphericalProblem problem;
    /// Present when the file gave Q rather than Delta+.
    std::optional<Polytope> q;
    std::optional<ReflectivityReport> reflectivity;
    ProblemOptions options;
    /// "sha256:<hex>" of the raw input bytes.
    std::string input_hash;
};

/// Exit codes of the command line tool.
enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitSchema = 2, kExitValidation = 3, kExitSolver = 4 };

Rational json_rational(const nlohmann::json& j, const std::string& path);
RVec json_rvec(const nlohmann::json& j, const std::string& path);
RMat json_rmat(const nlohmann::json& j, const std::string& path);
/// {"vertices": [[...]]} or {"facets": [{"normal": [...], "offset": ...}]}
Polytope json_polytope(const nlohmann::json& j, const std::string& path);

nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const RVec& v);
nlohmann::json to_json(const Polytope& p);
nlohmann::json to_json(const ReflectivityReport& r);

std::string sha256_hex(const std::string& bytes);

/// Schema violations raise SchemaError with a JSON path; mathematical failures (interiority,
/// density sign, reflectivity conditions) raise ValidationError.
LoadedProblem parse_problem(const std::string& text);
LoadedProblem load_problem(const std::string& path);

/// Command line overrides; unset fields keep the problem file's options.
struct RunRequest {
    std::string command;
    std::string input;
    std::string out;
    std::string trace;
    std::optional<double> tol;
    std::optional<int> grid;
    std::optional<double> box;
    std::optional<double> t0;
};

bool is_command(const std::string& command);

/// Runs one command on a loaded problem and returns the report. Module failures propagate
/// (SolverError, ValidationError); trace CSVs are written when `trace` is set.
nlohmann::json run(const std::string& command, const LoadedProblem& lp, const std::string& trace = {});

/// Full command line behavior: load, run, write the report, print a summary to `out` and
/// diagnostics to `err`. Returns the exit code.
int run_cli(const RunRequest& request, std::ostream& out, std::ostream& err);

/// Companion path for the soliton sweep trace: "dir/name.csv" -> "dir/name.soliton.csv".
std::string soliton_trace_path(const std::string& trace);

}  // namespace horofano

#endif
