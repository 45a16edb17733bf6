#include "qgeom/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

#include "qgeom/geodesics.hpp"
#include "qgeom/oracles.hpp"
#include "qgeom/state_geometry.hpp"

namespace qgeom::cli {

using nlohmann::json;

namespace {

constexpr double kStateNormSlack = 1e-6;

double parse_real(const json& j, const std::string& field) {
    if (!j.is_number())
        throw ParseError(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw ParseError(field, "expected a finite number");
    return v;
}

Complex parse_complex(const json& j, const std::string& field) {
    if (j.is_number())
        return {parse_real(j, field), 0.0};
    if (!j.is_array() || j.size() != 2)
        throw ParseError(field, "expected a [re, im] pair");
    return {parse_real(j[0], field + "[0]"), parse_real(j[1], field + "[1]")};
}

CVector parse_complex_vector(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty())
        throw ParseError(field, "expected a non-empty list of [re, im] pairs");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = parse_complex(j[i], field + "[" + std::to_string(i) + "]");
    return v;
}

HermitianOperator parse_hamiltonian(const json& j) {
    const std::string field = "hamiltonian";
    if (j.is_object()) {
        if (!j.contains("omega") || !j.contains("n"))
            throw ParseError(field, "two-level form needs \"omega\" and \"n\"");
        const double omega = parse_real(j.at("omega"), field + ".omega");
        const json& n = j.at("n");
        if (!n.is_array() || n.size() != 3)
            throw ParseError(field + ".n", "expected three reals");
        std::array<double, 3> axis{};
        for (std::size_t i = 0; i < 3; ++i)
            axis[i] = parse_real(n[i], field + ".n[" + std::to_string(i) + "]");
        const double epsilon = j.contains("epsilon") ? parse_real(j.at("epsilon"), field + ".epsilon") : 0.0;
        try {
            return two_level_hamiltonian(omega, axis, epsilon);
        } catch (const InvalidArgument& e) {
            throw ParseError(field + ".n", e.what());
        }
    }
    if (!j.is_array() || j.empty())
        throw ParseError(field, "expected a list of rows or a two-level object");
    const auto dim = static_cast<Eigen::Index>(j.size());
    CMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const std::string row_field = field + "[" + std::to_string(r) + "]";
        const CVector row = parse_complex_vector(j[static_cast<std::size_t>(r)], row_field);
        if (row.size() != dim)
            throw ParseError(row_field, "row length " + std::to_string(row.size()) +
                                            " does not match the matrix dimension " +
                                            std::to_string(dim));
        m.row(r) = row.transpose();
    }
    try {
        return HermitianOperator(std::move(m));
    } catch (const Error& e) {
        throw ParseError(field, e.what());
    }
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path, e.what());
    }
}

json optional_number(const std::optional<double>& v) {
    if (!v)
        return nullptr;
    if (std::isinf(*v))
        return *v > 0 ? "inf" : "-inf";
    return *v;
}

} // namespace

StateVector parse_state(const json& doc, const std::string& field) {
    const json* j = &doc;
    if (doc.is_object()) {
        if (!doc.contains("state"))
            throw ParseError(field, "missing");
        j = &doc.at("state");
    }
    const CVector v = parse_complex_vector(*j, field);
    if (v.size() < 2)
        throw ParseError(field, "state dimension must be at least 2");
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > kStateNormSlack)
        throw ParseError(field, "state norm " + std::to_string(norm) +
                                    " differs from 1 by more than 1e-6");
    return StateVector(v);
}

ProblemSpec parse_problem(const json& doc) {
    if (!doc.is_object())
        throw ParseError("<root>", "expected a JSON object");
    if (!doc.contains("hamiltonian"))
        throw ParseError("hamiltonian", "missing");
    if (!doc.contains("state"))
        throw ParseError("state", "missing");
    HermitianOperator h = parse_hamiltonian(doc.at("hamiltonian"));
    StateVector psi = parse_state(doc.at("state"), "state");
    if (psi.dim() != h.dim())
        throw ParseError("state", "dimension " + std::to_string(psi.dim()) +
                                      " does not match the Hamiltonian dimension " +
                                      std::to_string(h.dim()));
    double hbar = 1.0;
    double gamma = 2.0;
    if (doc.contains("constants")) {
        const json& c = doc.at("constants");
        if (!c.is_object())
            throw ParseError("constants", "expected an object");
        if (c.contains("hbar"))
            hbar = parse_real(c.at("hbar"), "constants.hbar");
        if (c.contains("gamma"))
            gamma = parse_real(c.at("gamma"), "constants.gamma");
    }
    try {
        return ProblemSpec{std::move(h), std::move(psi), PhysicalConstants(hbar, gamma)};
    } catch (const InvalidArgument& e) {
        throw ParseError("constants", e.what());
    }
}

json complex_vector_to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back({v[i].real(), v[i].imag()});
    return out;
}

json problem_to_json(const ProblemSpec& spec) {
    json rows = json::array();
    const CMatrix& m = spec.hamiltonian.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        rows.push_back(complex_vector_to_json(m.row(r).transpose()));
    return {{"hamiltonian", rows},
            {"state", complex_vector_to_json(spec.state.amplitudes())},
            {"constants", {{"hbar", spec.constants.hbar()}, {"gamma", spec.constants.gamma()}}}};
}

ProblemSpec load_problem(const std::string& path) { return parse_problem(parse_file(path)); }

StateVector load_state(const std::string& path) { return parse_state(parse_file(path), "state"); }

json report_to_json(const GeometryReport& r) {
    return {{"speed", r.speed},
            {"kappa", r.kappa},
            {"kappa_bar", optional_number(r.kappa_bar)},
            {"tau", optional_number(r.tau)},
            {"tau_bar", optional_number(r.tau_bar)},
            {"radius", optional_number(r.radius)},
            {"moments",
             {{"mean", r.moments.mean},
              {"var", r.moments.var},
              {"central3", r.moments.central3},
              {"central4", r.moments.central4}}}};
}

void ScanSpec::validate() const {
    if (!(dt_start > 0.0) || !std::isfinite(dt_start))
        throw ParseError("dt-start", "must be positive");
    if (points < static_cast<int>(kMinCurvePoints))
        throw ParseError("points", "must be at least " + std::to_string(kMinCurvePoints));
    if (!(ratio > 0.0 && ratio < 1.0))
        throw ParseError("ratio", "must lie in (0, 1)");
    if (!(dt_prime_ratio > 0.0) || !std::isfinite(dt_prime_ratio))
        throw ParseError("dt-prime-ratio", "must be positive");
}

int cmd_report(const std::string& spec_path, bool require_dimensionless, std::ostream& out,
               std::ostream& err) {
    try {
        const ProblemSpec spec = load_problem(spec_path);
        const GeometryReport report = geometry_report(spec.hamiltonian, spec.state, spec.constants);
        out << report_to_json(report).dump(2) << '\n';
        if (require_dimensionless && report.stationary()) {
            err << "error: the state is stationary (energy variance below threshold); "
                   "dimensionless coefficients are undefined\n";
            return kStationary;
        }
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }
}

int cmd_geodesic(const std::string& spec_path, const std::string& psi1_path,
                 GeodesicParameter which, double value, std::ostream& out, std::ostream& err) {
    try {
        const ProblemSpec spec = load_problem(spec_path);
        const StateVector psi1 = load_state(psi1_path);
        if (psi1.dim() != spec.state.dim())
            throw ParseError("state", "psi1 dimension does not match the initial state");
        const GeodesicFamily g = geodesic_between(spec.state, psi1);
        const bool use_xi = which == GeodesicParameter::Xi;
        StateVector point = [&] {
            try {
                return use_xi ? point_xi(g, value) : point_theta(g, value);
            } catch (const InvalidArgument& e) {
                throw ParseError(use_xi ? "xi" : "theta", e.what());
            }
        }();
        json doc = {{"point", complex_vector_to_json(point.amplitudes())},
                    {"length", geodesic_length(g, spec.constants)},
                    {"wootters", wootters_distance(spec.state, psi1, spec.constants)},
                    {use_xi ? "xi" : "theta", value}};
        out << doc.dump(2) << '\n';
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const OrthogonalEndpoints& e) {
        err << "error: " << e.what()
            << "; perturb one of the states to obtain a geodesic\n";
        return kOrthogonalEndpoints;
    }
}

int cmd_scan(const std::string& spec_path, const ScanSpec& scan, ScanMode mode,
             const std::string& csv_path, std::ostream& out, std::ostream& err) {
    try {
        scan.validate();
        const ProblemSpec spec = load_problem(spec_path);
        const auto window = geometric_window(scan.dt_start, static_cast<std::size_t>(scan.points),
                                             scan.ratio);
        const bool curvature_mode = mode == ScanMode::Curvature;
        const std::vector<CurvePoint> curve =
            curvature_mode
                ? curvature_deviation_curve(spec.hamiltonian, spec.state, window, spec.constants)
                : torsion_deviation_curve(spec.hamiltonian, spec.state, window, scan.dt_prime_ratio,
                                          spec.constants);

        std::ofstream csv(csv_path);
        if (!csv)
            throw ParseError(csv_path, "cannot open output file");
        csv << "dt,value\r\n" << std::setprecision(17);
        for (const CurvePoint& p : curve)
            csv << p.dt << ',' << p.value << "\r\n";
        csv.close();

        const ScalingFit fit = fit_power_law(curve);
        const double predicted =
            curvature_mode
                ? predicted_curvature_prefactor(curvature(spec.hamiltonian, spec.state), spec.constants)
                : predicted_torsion_prefactor(torsion(spec.hamiltonian, spec.state),
                                              scan.dt_prime_ratio, spec.constants);
        const json summary = {{"mode", curvature_mode ? "curvature" : "torsion"},
                              {"exponent", fit.exponent},
                              {"prefactor", fit.prefactor},
                              {"predicted_prefactor", predicted},
                              {"relative_error", std::abs(fit.prefactor - predicted) / predicted},
                              {"residual", fit.residual},
                              {"points_used", fit.points_used}};
        out << summary.dump(2) << '\n';
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const OrthogonalEndpoints& e) {
        err << "error: " << e.what() << "; choose a smaller --dt-start\n";
        return kOrthogonalEndpoints;
    } catch (const FlatCurve& e) {
        err << "error: " << e.what() << '\n';
        return kFlatScan;
    } catch (const NonPositiveValues&) {
        err << "error: the curve is flat at numerical zero (exact zeros); "
               "the evolution follows a geodesic or stays in its plane\n";
        return kFlatScan;
    } catch (const DegeneratePlane&) {
        err << "error: the curve is flat at numerical zero; the state does not move\n";
        return kFlatScan;
    } catch (const StationaryState&) {
        err << "error: the curve is flat at numerical zero; the state is stationary\n";
        return kFlatScan;
    }
}

int cmd_verify(std::uint64_t seed, VerifyLevel level, std::ostream& out, std::ostream&) {
    const std::vector<SuiteResult> results = run_verification(seed, level);
    std::size_t passed = 0;
    char line[256];
    std::snprintf(line, sizeof line, "%-50s %-6s %7s %12s %12s\n", "invariant", "status", "cases",
                  "worst", "limit");
    out << line;
    for (const SuiteResult& r : results) {
        passed += r.passed;
        std::snprintf(line, sizeof line, "%-50s %-6s %7zu %12.3e %12.3e\n", r.name.c_str(),
                      r.passed ? "PASS" : "FAIL", r.cases, r.worst, r.limit);
        out << line;
        if (!r.passed)
            out << "    first failure: " << r.note << '\n';
    }
    out << passed << '/' << results.size() << " invariants passed (seed " << seed << ", "
        << (level == VerifyLevel::Quick ? "quick" : "full") << ")\n";
    return passed == results.size() ? kOk : kVerificationFailed;
}

} // namespace qgeom::cli
