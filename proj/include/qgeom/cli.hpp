#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "qgeom/core.hpp"
#include "qgeom/curvature_torsion.hpp"
#include "qgeom/verify.hpp"

namespace qgeom::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kParseError = 2,
    kStationary = 3,
    kOrthogonalEndpoints = 4,
    kFlatScan = 5,
};

/// Malformed or invalid input file; the message starts with the offending field.
class ParseError : public Error {
public:
    ParseError(const std::string& field, const std::string& what) : Error(field + ": " + what) {}
};

/// A Hamiltonian, an initial state and the constants, as read from JSON:
///
///   {"hamiltonian": [[[re, im], ...], ...]          (list of rows)
///                 | {"omega": w, "n": [x, y, z], "epsilon": e},
///    "state": [[re, im], ...],
///    "constants": {"hbar": 1, "gamma": 2}}           (optional)
///
/// States within 1e-6 of unit norm are renormalized; anything further off
/// is rejected.
struct ProblemSpec {
    HermitianOperator hamiltonian;
    StateVector state;
    PhysicalConstants constants;
};

ProblemSpec parse_problem(const nlohmann::json& doc);
nlohmann::json problem_to_json(const ProblemSpec& spec);
ProblemSpec load_problem(const std::string& path);

/// Accepts either a bare [[re, im], ...] array or an object with a "state" key.
StateVector parse_state(const nlohmann::json& doc, const std::string& field = "state");
StateVector load_state(const std::string& path);

nlohmann::json complex_vector_to_json(const CVector& v);
nlohmann::json report_to_json(const GeometryReport& report);

enum class ScanMode { Curvature, Torsion };
enum class GeodesicParameter { Xi, Theta };

struct ScanSpec {
    double dt_start = 0.0;
    int points = 8;
    double ratio = 0.5;
    double dt_prime_ratio = 1.0;

    /// Throws ParseError naming the bad field.
    void validate() const;
};

int cmd_report(const std::string& spec_path, bool require_dimensionless, std::ostream& out,
               std::ostream& err);

int cmd_geodesic(const std::string& spec_path, const std::string& psi1_path,
                 GeodesicParameter which, double value, std::ostream& out, std::ostream& err);

/// Writes `dt,value` rows to csv_path and the fit summary JSON to `out`.
int cmd_scan(const std::string& spec_path, const ScanSpec& scan, ScanMode mode,
             const std::string& csv_path, std::ostream& out, std::ostream& err);

int cmd_verify(std::uint64_t seed, VerifyLevel level, std::ostream& out, std::ostream& err);

} // namespace qgeom::cli
