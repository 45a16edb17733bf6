#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qgeom/oracles.hpp"
#include "qgeom/state_geometry.hpp"
#include "test_support.hpp"

using namespace qgeom;
using namespace qgeom::testing;
using doctest::Approx;

namespace {

const Complex I(0.0, 1.0);

ParamFamily bloch_family() {
    return ParamFamily{[](std::span<const double> p) {
                           CVector v(2);
                           v[0] = std::cos(p[0] / 2.0);
                           v[1] = std::polar(std::sin(p[0] / 2.0), p[1]);
                           return StateVector(v);
                       },
                       {{0.0, std::numbers::pi}, {-10.0, 10.0}}};
}

} // namespace

TEST_CASE("Fubini-Study distance") {
    const StateVector a = state({1.0, 0.0});
    CHECK(fubini_study_distance(a, a) == 0.0);
    CHECK(fubini_study_distance(a, state({0.0, 1.0})) == Approx(2.0));
    // |<a|b>| = 1/sqrt2 -> gamma * sqrt(1/2) = sqrt2 with gamma = 2.
    const StateVector b = state({1.0, I});
    CHECK(overlap_mod(a.amplitudes(), b.amplitudes()) == Approx(1.0 / std::sqrt(2.0)));
    CHECK(fubini_study_distance(a, b) == Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(fubini_study_distance(a, b, PhysicalConstants(1.0, 1.0)) == Approx(std::sqrt(0.5)));
    CHECK_THROWS_AS(fubini_study_distance(a, StateVector::basis(3, 0)), DimensionMismatch);
}

TEST_CASE("Wootters distance") {
    const StateVector a = state({1.0, 0.0});
    CHECK(wootters_distance(a, a) == 0.0);
    CHECK(wootters_distance(a, state({0.0, 1.0})) == Approx(std::numbers::pi));
    // |<a|b>| = 1/2 -> 2 * pi/3.
    const StateVector b = state({0.5, std::sqrt(3.0) / 2.0});
    CHECK(wootters_distance(a, b) == Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-15));
}

TEST_CASE("distances are ray functions") {
    Rng rng(11);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index dim = 2 + trial % 5;
        const StateVector a = random_state(dim, rng);
        const StateVector b = random_state(dim, rng);
        const StateVector ra(std::polar(1.0, phase(rng)) * a.amplitudes());
        const StateVector rb(std::polar(1.0, phase(rng)) * b.amplitudes());
        CHECK(std::abs(fubini_study_distance(a, b) - fubini_study_distance(ra, rb)) <= 1e-14);
        CHECK(std::abs(wootters_distance(a, b) - wootters_distance(ra, rb)) <= 1e-14);
        CHECK(fubini_study_distance(a, b) <= 2.0);
        CHECK(wootters_distance(a, b) <= std::numbers::pi + 1e-15);
        // Stable form agrees with the definition away from coincidence.
        CHECK(infidelity(a, b) == Approx(naive_infidelity(a.amplitudes(), b.amplitudes())).epsilon(1e-12));
    }
}

TEST_CASE("neighbouring states: d_FS and d_W agree to O(delta^2)") {
    Rng rng(12);
    for (double delta : {1e-3, 3e-4, 1e-4, 1e-5}) {
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::Index dim = 2 + trial % 5;
            const StateVector a = random_state(dim, rng);
            // b = sqrt(1 - delta^2) a + delta w with w orthogonal to a.
            CVector w = random_state(dim, rng).amplitudes();
            w -= a.amplitudes().dot(w) * a.amplitudes();
            w.normalize();
            const StateVector b(std::sqrt(1.0 - delta * delta) * a.amplitudes() + delta * w);
            const double fs = fubini_study_distance(a, b);
            const double wd = wootters_distance(a, b);
            CHECK(fs == Approx(2.0 * delta).epsilon(1e-6));
            CHECK(std::abs(fs - wd) / wd <= delta * delta);
        }
    }
}

TEST_CASE("metric tensor of the Bloch family is the unit sphere") {
    const ParamFamily family = bloch_family();
    const double point[] = {std::numbers::pi / 3.0, 0.0};
    const MetricTensor g = metric_tensor(family, point);
    CHECK(g(0, 0) == Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(g(0, 1)) < 1e-6);
    CHECK(g(1, 1) == Approx(0.75).epsilon(1e-6));
    CHECK(g.matrix() == g.matrix().transpose());
}

TEST_CASE("metric tensor of simple one-parameter families") {
    SUBCASE("pure phase family does not move the ray") {
        const StateVector base = state({1.0, 2.0 * I, -1.0});
        const ParamFamily family{[&](std::span<const double> p) {
                                     return StateVector(std::polar(1.0, p[0]) * base.amplitudes());
                                 },
                                 {{-1.0, 1.0}}};
        const double point[] = {0.2};
        CHECK(std::abs(metric_tensor(family, point)(0, 0)) < 1e-9);
    }
    SUBCASE("real rotation (cos, sin) has g = gamma^2 = 4") {
        const ParamFamily family{[](std::span<const double> p) {
                                     CVector v(2);
                                     v << std::cos(p[0]), std::sin(p[0]);
                                     return StateVector(v);
                                 },
                                 {{-10.0, 10.0}}};
        for (double xi : {-2.0, 0.0, 0.4, 3.0}) {
            const double point[] = {xi};
            CHECK(metric_tensor(family, point)(0, 0) == Approx(4.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("metric tensor errors") {
    const ParamFamily family = bloch_family();
    const double edge[] = {5e-6, 0.0};
    CHECK_THROWS_AS(metric_tensor(family, edge), InvalidArgument);
    const double wrong_size[] = {1.0};
    CHECK_THROWS_AS(metric_tensor(family, wrong_size), DimensionMismatch);
    const double ok[] = {1.0, 0.0};
    CHECK_THROWS_AS(metric_tensor(family, ok, {}, 0.0), InvalidArgument);

    const ParamFamily blows_up{[](std::span<const double> p) {
                                   CVector v(2);
                                   v << 1.0, p[0] > 0.5 ? std::numeric_limits<double>::infinity() : 0.0;
                                   if (!v.allFinite())
                                       throw NumericalError("map is singular");
                                   return StateVector(v);
                               },
                               {{0.0, 1.0}}};
    const double near_singular[] = {0.5};
    CHECK_THROWS_AS(metric_tensor(blows_up, near_singular, {}, 1e-3), NumericalError);
}

TEST_CASE("finite-difference metric converges at second order") {
    const ParamFamily family = bloch_family();
    const double theta = 1.1;
    const double point[] = {theta, 0.3};
    auto error = [&](double step) {
        const MetricTensor g = metric_tensor(family, point, {}, step);
        return std::max(std::abs(g(0, 0) - 1.0),
                        std::abs(g(1, 1) - std::sin(theta) * std::sin(theta)));
    };
    const double coarse = error(2e-2);
    const double fine = error(1e-2);
    // Halving the step divides the O(step^2) error by 4.
    CHECK(coarse / fine == Approx(4.0).epsilon(0.05));
}

TEST_CASE("evolution speed") {
    CHECK(evolution_speed(diag({0, 1, 3}), StateVector::basis(3, 1)) == 0.0);
    CHECK(evolution_speed(pauli_z(), state({1.0, 1.0})) == Approx(2.0).epsilon(1e-15));
    CHECK(evolution_speed(diag({0, 1, 3}), state({1.0, 1.0, 1.0})) ==
          Approx(2.0 / 3.0 * std::sqrt(14.0)).epsilon(1e-14));
    CHECK(evolution_speed(pauli_z(), state({1.0, 1.0}), PhysicalConstants(2.0, 1.0)) == Approx(0.5));
}

TEST_CASE("speed matches d_FS(psi, U(dt) psi) / dt") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index dim = 2 + trial % 5;
        const HermitianOperator h = random_hermitian(dim, rng);
        const StateVector psi = random_state(dim, rng);
        const double v = evolution_speed(h, psi);
        const double base = 1e-1 / v;
        double prev_err = 0.0;
        for (int k = 0; k <= 3; ++k) {
            const double dt = base * std::pow(10.0, -k);
            const double err = std::abs(fubini_study_distance(psi, evolve(h, psi, dt)) / dt - v) / v;
            if (k > 0)
                CHECK(err < prev_err);
            prev_err = err;
        }
        CHECK(prev_err <= 1e-3);
    }
}
