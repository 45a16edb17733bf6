#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "qgeom/cli.hpp"
#include "qgeom/oracles.hpp"
#include "test_support.hpp"

using namespace qgeom;
using namespace qgeom::cli;
using namespace qgeom::testing;
using doctest::Approx;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string data(const std::string& name) { return std::string(QGEOM_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qgeom_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string write_json(const std::string& name, const json& doc) {
    const fs::path p = scratch(name);
    std::ofstream(p) << doc.dump();
    return p.string();
}

std::string write_text(const std::string& name, const std::string& text) {
    const fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p.string();
}

struct Run {
    int code;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Run report(const std::string& path, bool require = false) {
    std::ostringstream out, err;
    const int code = cmd_report(path, require, out, err);
    return {code, out.str(), err.str()};
}

Run geodesic(const std::string& spec, const std::string& psi1, GeodesicParameter which, double v) {
    std::ostringstream out, err;
    const int code = cmd_geodesic(spec, psi1, which, v, out, err);
    return {code, out.str(), err.str()};
}

Run scan(const std::string& spec, const ScanSpec& s, ScanMode mode, const std::string& csv) {
    std::ostringstream out, err;
    const int code = cmd_scan(spec, s, mode, csv, out, err);
    return {code, out.str(), err.str()};
}

json dense_problem(const CMatrix& h, const CVector& psi) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < h.rows(); ++r)
        rows.push_back(complex_vector_to_json(h.row(r).transpose()));
    return {{"hamiltonian", rows}, {"state", complex_vector_to_json(psi)}};
}

} // namespace

TEST_CASE("problem spec round-trips bit for bit") {
    Rng rng(51);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index dim = 2 + trial % 6;
        const ProblemSpec spec{random_hermitian(dim, rng), random_state(dim, rng),
                               PhysicalConstants(u(rng), u(rng))};
        const json doc = json::parse(problem_to_json(spec).dump());
        const ProblemSpec back = parse_problem(doc);
        CHECK((back.hamiltonian.matrix().array() == spec.hamiltonian.matrix().array()).all());
        CHECK((back.state.amplitudes().array() == spec.state.amplitudes().array()).all());
        CHECK(back.constants.hbar() == spec.constants.hbar());
        CHECK(back.constants.gamma() == spec.constants.gamma());
    }
}

TEST_CASE("parse errors name the offending field") {
    const json good = json::parse(std::ifstream(data("three_level.json")));
    auto expect_field = [](const json& doc, const std::string& field) {
        std::string message;
        try {
            parse_problem(doc);
        } catch (const ParseError& e) {
            message = e.what();
        }
        CHECK_MESSAGE(message.rfind(field, 0) == 0, message);
    };

    json j = good;
    j.erase("hamiltonian");
    expect_field(j, "hamiltonian");
    j = good;
    j["hamiltonian"][1].erase(2);
    expect_field(j, "hamiltonian[1]");
    j = good;
    j["hamiltonian"][0][1] = json::array({0.0, 1.0});
    expect_field(j, "hamiltonian");
    j = good;
    j["state"][0] = json::array({2.0, 0.0});
    expect_field(j, "state");
    j = good;
    j["state"].erase(2);
    expect_field(j, "state");
    j = good;
    j["state"][1] = "x";
    expect_field(j, "state[1]");
    j = good;
    j["constants"]["hbar"] = -1.0;
    expect_field(j, "constants");
    j = good;
    j["hamiltonian"] = {{"omega", 1.0}, {"n", {1.0, 1.0, 0.0}}};
    expect_field(j, "hamiltonian.n");

    // Within the slack the state is renormalized.
    j = good;
    for (auto& a : j["state"])
        a[0] = a[0].get<double>() * (1.0 + 5e-7);
    CHECK(parse_problem(j).state.amplitudes().norm() == Approx(1.0).epsilon(1e-15));

    const std::string path = write_text("broken.json", "{\"hamiltonian\": [");
    const Run r = report(path);
    CHECK(r.code == kParseError);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(report(scratch("absent.json").string()).code == kParseError);
}

TEST_CASE("report") {
    SUBCASE("three-level uniform") {
        const Run r = report(data("three_level.json"));
        REQUIRE(r.code == kOk);
        const json d = r.doc();
        CHECK(d["kappa_bar"].get<double>() == Approx(0.5).epsilon(1e-14));
        CHECK(d["tau_bar"].get<double>() == Approx(243.0 / 686.0).epsilon(1e-14));
        CHECK(d["speed"].get<double>() == Approx(2.0 / 3.0 * std::sqrt(14.0)).epsilon(1e-14));
        CHECK(d["radius"].get<double>() == Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(d["moments"]["var"].get<double>() == Approx(14.0 / 9.0).epsilon(1e-14));
    }
    SUBCASE("eigenstate") {
        const Run r = report(data("eigenstate.json"));
        REQUIRE(r.code == kOk);
        const json d = r.doc();
        CHECK(d["speed"].get<double>() == 0.0);
        CHECK(d["kappa_bar"].is_null());
        CHECK(d["tau_bar"].is_null());
        CHECK(d["radius"].is_null());
        const Run strict = report(data("eigenstate.json"), true);
        CHECK(strict.code == kStationary);
        CHECK(strict.err.find("stationary") != std::string::npos);
    }
    SUBCASE("two-level with an energy offset") {
        const Run r = report(data("two_level.json"));
        REQUIRE(r.code == kOk);
        const json d = r.doc();
        CHECK(std::abs(d["kappa_bar"].get<double>()) < 1e-28);
        CHECK(std::abs(d["tau_bar"].get<double>()) < 1e-28);
        CHECK(d["radius"] == "inf");
        CHECK(d["moments"]["mean"].get<double>() == Approx(5.0));
    }
}

TEST_CASE("geodesic") {
    const std::string spec = data("three_level.json");
    const std::string psi0_path = write_json(
        "psi0_state.json", json::parse(std::ifstream(spec))["state"]);

    SUBCASE("zero length to itself") {
        const Run r = geodesic(spec, psi0_path, GeodesicParameter::Xi, 0.5);
        REQUIRE(r.code == kOk);
        CHECK(r.doc()["length"].get<double>() < 1e-7);
        CHECK(r.doc()["wootters"].get<double>() < 1e-7);
    }
    SUBCASE("overlap one half") {
        const json a = {{"hamiltonian", json::parse(std::ifstream(spec))["hamiltonian"]},
                        {"state", {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}}};
        const std::string spec_a = write_json("spec_a.json", a);
        const double c = 0.5, s = std::sqrt(0.75);
        const std::string psi1 = write_json("psi1_half.json", {{"state", {{0.0, c}, {s, 0.0}, {0.0, 0.0}}}});
        const Run r = geodesic(spec_a, psi1, GeodesicParameter::Theta, 0.3);
        REQUIRE(r.code == kOk);
        const json d = r.doc();
        CHECK(d["length"].get<double>() == Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-14));
        CHECK(d["wootters"].get<double>() == Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-14));
        CHECK(d["theta"].get<double>() == 0.3);

        const Run start = geodesic(spec_a, psi1, GeodesicParameter::Xi, 0.0);
        REQUIRE(start.code == kOk);
        const json p = start.doc()["point"];
        CHECK(p[0][0].get<double>() == Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(p[1][0].get<double>()) < 1e-15);

        const Run end = geodesic(spec_a, psi1, GeodesicParameter::Xi, 1.0);
        // endpoint lies on psi1's ray
        const json q = end.doc()["point"];
        CVector v(3);
        for (int i = 0; i < 3; ++i)
            v[i] = Complex(q[i][0].get<double>(), q[i][1].get<double>());
        CVector w(3);
        w << Complex(0.0, c), s, 0.0;
        CHECK(overlap_mod(v, w) == Approx(1.0).epsilon(1e-14));

        CHECK(geodesic(spec_a, psi1, GeodesicParameter::Xi, 1.5).code == kParseError);
        CHECK(geodesic(spec_a, psi1, GeodesicParameter::Theta, -0.1).code == kParseError);
    }
    SUBCASE("orthogonal endpoints") {
        const Run r = geodesic(data("eigenstate.json"), data("psi1.json"), GeodesicParameter::Xi, 0.5);
        CHECK(r.code == kOrthogonalEndpoints);
        CHECK(r.err.find("perturb") != std::string::npos);
    }
    SUBCASE("dimension mismatch") {
        const std::string two = write_json("psi_two.json", json::array({{1.0, 0.0}, {0.0, 0.0}}));
        CHECK(geodesic(spec, two, GeodesicParameter::Xi, 0.5).code == kParseError);
    }
}

TEST_CASE("scan") {
    const std::string csv = scratch("scan.csv").string();
    ScanSpec s;
    s.dt_start = 0.05 / std::sqrt(14.0 / 9.0);
    s.points = 8;
    s.ratio = 0.5;

    SUBCASE("curvature on the three-level example") {
        const Run r = scan(data("three_level.json"), s, ScanMode::Curvature, csv);
        REQUIRE(r.code == kOk);
        const json d = r.doc();
        CHECK(d["mode"] == "curvature");
        CHECK(d["exponent"].get<double>() == Approx(4.0).epsilon(0.05 / 4.0));
        CHECK(d["relative_error"].get<double>() <= 0.02);
        CHECK(d["predicted_prefactor"].get<double>() == Approx(98.0 / 81.0).epsilon(1e-14));
        CHECK(d["points_used"].get<int>() >= 5);

        std::ifstream in(csv);
        std::string header;
        std::getline(in, header);
        CHECK(header == "dt,value\r");
        std::string line;
        int rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            CHECK(line.back() == '\r');
            const auto comma = line.find(',');
            REQUIRE(comma != std::string::npos);
            const std::string dt = line.substr(0, comma);
            const std::string value = line.substr(comma + 1, line.size() - comma - 2);
            CHECK(std::stod(dt) == Approx(s.dt_start * std::pow(0.5, rows - 1)).epsilon(1e-15));
            CHECK(std::stod(value) > 0.0);
            // 17 significant digits recover the double exactly
            const double parsed = std::stod(value);
            std::ostringstream again;
            again << std::setprecision(17) << parsed;
            CHECK(again.str() == value);
        }
        CHECK(rows == 8);
    }
    SUBCASE("torsion with a second-stage ratio") {
        s.dt_prime_ratio = 2.0;
        const Run r = scan(data("three_level.json"), s, ScanMode::Torsion, csv);
        REQUIRE(r.code == kOk);
        const json d = r.doc();
        CHECK(d["exponent"].get<double>() == Approx(4.0).epsilon(0.05 / 4.0));
        CHECK(d["predicted_prefactor"].get<double>() == Approx(9.0 * 6.0 / 7.0).epsilon(1e-13));
        CHECK(d["relative_error"].get<double>() <= 0.02);
    }
    SUBCASE("flat curves") {
        const Run t = scan(data("two_level.json"), s, ScanMode::Torsion, csv);
        CHECK(t.code == kFlatScan);
        CHECK(t.err.find("flat") != std::string::npos);
        CHECK(scan(data("geodesic_state.json"), s, ScanMode::Curvature, csv).code == kFlatScan);
        CHECK(scan(data("eigenstate.json"), s, ScanMode::Curvature, csv).code == kFlatScan);
    }
    SUBCASE("window too wide for a geodesic") {
        s.dt_start = std::numbers::pi / 2.0;
        s.ratio = 0.9;
        CHECK(scan(data("geodesic_state.json"), s, ScanMode::Curvature, csv).code == kOrthogonalEndpoints);
    }
    SUBCASE("bad scan options") {
        ScanSpec bad = s;
        bad.points = 5;
        Run r = scan(data("three_level.json"), bad, ScanMode::Curvature, csv);
        CHECK(r.code == kParseError);
        CHECK(r.err.find("points") != std::string::npos);
        bad = s;
        bad.ratio = 1.5;
        CHECK(scan(data("three_level.json"), bad, ScanMode::Curvature, csv).code == kParseError);
        bad = s;
        bad.dt_start = 0.0;
        CHECK(scan(data("three_level.json"), bad, ScanMode::Curvature, csv).code == kParseError);
    }
}

TEST_CASE("verify is deterministic") {
    std::ostringstream a, b, err;
    CHECK(cmd_verify(7, VerifyLevel::Quick, a, err) == kOk);
    CHECK(cmd_verify(7, VerifyLevel::Quick, b, err) == kOk);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("invariants passed (seed 7, quick)") != std::string::npos);

    std::ostringstream c;
    cmd_verify(8, VerifyLevel::Quick, c, err);
    CHECK(c.str() != a.str());
}

TEST_CASE("dense specs written by hand") {
    CMatrix h(2, 2);
    h << 1.0, Complex(0.0, -1.0), Complex(0.0, 1.0), -1.0;
    CVector psi(2);
    psi << 1.0, 0.0;
    const std::string path = write_json("dense.json", dense_problem(h, psi));
    const Run r = report(path);
    REQUIRE(r.code == kOk);
    // <H> = 1, var = 1, and kappa_bar = 4 <H>^2 / var for a traceless qubit
    CHECK(r.doc()["kappa_bar"].get<double>() == Approx(4.0).epsilon(1e-14));
}
