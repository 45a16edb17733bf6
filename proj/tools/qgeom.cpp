// Command-line front end: report, geodesic, scan and verify.

#include <iostream>

#include "CLI11.hpp"

#include "qgeom/cli.hpp"

int main(int argc, char** argv) {
    using namespace qgeom::cli;

    CLI::App app{"Geometry of quantum evolution: distances, geodesics, curvature and torsion"};
    app.require_subcommand(1);

    std::string spec_path;
    bool require_dimensionless = false;
    auto* report = app.add_subcommand("report", "Speed, curvature and torsion at one state");
    report->add_option("spec", spec_path, "Problem spec (JSON)")->required();
    report->add_flag("--require-dimensionless", require_dimensionless,
                     "Exit 3 when the state is stationary");

    std::string psi1_path;
    double xi = 0.0;
    double theta = 0.0;
    auto* geodesic = app.add_subcommand("geodesic", "Point and length of the geodesic to psi1");
    geodesic->add_option("spec", spec_path, "Problem spec (JSON); its state is psi0")->required();
    geodesic->add_option("psi1", psi1_path, "Target state (JSON)")->required();
    auto* xi_opt = geodesic->add_option("--xi", xi, "Linear parameter in [0, 1]");
    auto* theta_opt = geodesic->add_option("--theta", theta, "Angular parameter in [0, pi]");
    xi_opt->excludes(theta_opt);
    theta_opt->excludes(xi_opt);

    ScanSpec scan;
    std::string mode = "curvature";
    std::string out_path;
    auto* scan_cmd = app.add_subcommand("scan", "Deviation curve over a dt window plus a power-law fit");
    scan_cmd->add_option("spec", spec_path, "Problem spec (JSON)")->required();
    scan_cmd->add_option("--mode", mode, "curvature or torsion")
        ->check(CLI::IsMember({"curvature", "torsion"}));
    scan_cmd->add_option("--dt-start", scan.dt_start, "Largest dt of the window")->required();
    scan_cmd->add_option("--points", scan.points, "Number of window points (>= 6)")->required();
    scan_cmd->add_option("--ratio", scan.ratio, "Geometric ratio of the window, in (0, 1)")->required();
    scan_cmd->add_option("--dt-prime-ratio", scan.dt_prime_ratio, "dt' / dt for torsion mode");
    scan_cmd->add_option("--out", out_path, "CSV output path")->required();

    std::uint64_t seed = 20240501;
    std::string level = "quick";
    auto* verify = app.add_subcommand("verify", "Run the randomized invariant suites");
    verify->add_option("--seed", seed, "Seed for every suite");
    verify->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseError;
    }

    try {
        if (*report)
            return cmd_report(spec_path, require_dimensionless, std::cout, std::cerr);
        if (*geodesic) {
            if (!*xi_opt && !*theta_opt) {
                std::cerr << "error: one of --xi or --theta is required\n";
                return kParseError;
            }
            return cmd_geodesic(spec_path, psi1_path,
                                *xi_opt ? GeodesicParameter::Xi : GeodesicParameter::Theta,
                                *xi_opt ? xi : theta, std::cout, std::cerr);
        }
        if (*scan_cmd)
            return cmd_scan(spec_path, scan, mode == "torsion" ? ScanMode::Torsion : ScanMode::Curvature,
                            out_path, std::cout, std::cerr);
        if (*verify)
            return cmd_verify(seed, level == "full" ? qgeom::VerifyLevel::Full : qgeom::VerifyLevel::Quick,
                              std::cout, std::cerr);
    } catch (const qgeom::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParseError;
    }
    return kParseError;
}
