#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qdk/entropy.hpp"
#include "qdk/errors.hpp"
#include "qdk/state_io.hpp"
#include "qdk/states.hpp"

using namespace qdk;

TEST_CASE("density_from_pure") {
    CHECK(density_from_pure(PureState({1.0, 0.0, 0.0, 0.0}, 2, 2)).matrix() == ComplexMatrix::diagonal({1, 0, 0, 0}));

    const double h = 1.0 / std::numbers::sqrt2;
    const auto bell = density_from_pure(PureState({h, 0.0, 0.0, h}, 2, 2));
    for (std::size_t i : {0u, 3u})
        for (std::size_t j : {0u, 3u}) CHECK(bell.matrix()(i, j).real() == doctest::Approx(0.5));

    const auto rho = density_from_pure(PureState({std::sqrt(0.9), 0.0, 0.0, std::sqrt(0.1)}, 2, 2));
    const auto s = reduced_state(rho, Subsystem::A).spectrum();
    CHECK(s.values[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(s.values[1] == doctest::Approx(0.9).epsilon(1e-12));

    CHECK_THROWS_AS(PureState({1.0, 1.0}, 2, 1), ValidationError);
    CHECK_THROWS_AS(PureState({1.0, 0.0, 0.0}, 2, 2), DimensionError);
}

TEST_CASE("validate_density") {
    CHECK_NOTHROW(validate_density(0.25 * ComplexMatrix::identity(4), 2, 2));
    CHECK_THROWS_AS(validate_density(ComplexMatrix::diagonal({0.6, 0.6, -0.1, -0.1}), 2, 2), ValidationError);
    CHECK_THROWS_AS(validate_density(ComplexMatrix::diagonal({0.5, 0.6, 0.0, 0.0}), 2, 2), ValidationError);
    CHECK_THROWS_AS(validate_density(0.25 * ComplexMatrix::identity(4), 2, 3), DimensionError);
    CHECK_THROWS_AS(validate_density(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}, 2, 1), ValidationError);
    // eigenvalue drift down to -1e-10 is tolerated
    CHECK_NOTHROW(validate_density(ComplexMatrix::diagonal({1.0 + 5e-11, -5e-11}), 2, 1));
}

TEST_CASE("named_state catalog") {
    CHECK(named_state("cc-mixture").matrix() == ComplexMatrix::diagonal({0.5, 0, 0, 0.5}));
    CHECK(frobenius_distance(named_state("werner", {{"p", 0.0}}).matrix(), 0.25 * ComplexMatrix::identity(4)) <
          1e-15);

    const auto lo = named_state("lo-output");
    CHECK(lo.matrix()(2, 3).real() == doctest::Approx(0.25));
    CHECK(lo.matrix()(0, 0).real() == doctest::Approx(0.5));
    CHECK(lo.matrix()(2, 2).real() == doctest::Approx(0.25));

    const auto p1 = named_state("pure", {{"a", 1.0}});
    CHECK(p1.matrix() == ComplexMatrix::diagonal({1, 0, 0, 0}));

    const auto prod = named_state("product", {{"az", 1.0}, {"bx", 1.0}});
    CHECK(prod.matrix()(0, 1).real() == doctest::Approx(0.5));

    CHECK_THROWS_AS(named_state("ghz"), UnknownNameError);
    CHECK_THROWS_AS(named_state("werner", {{"p", 1.5}}), ValidationError);
    CHECK_THROWS_AS(named_state("werner", {{"q", 0.5}}), ValidationError);
    CHECK_THROWS_AS(named_state("product", {{"ax", 1.0}, {"ay", 1.0}}), ValidationError);

    for (const auto& name : named_state_names()) CHECK_NOTHROW(named_state(name));
}

TEST_CASE("pure(a) reduced spectra are the Schmidt coefficients") {
    for (int i = 0; i <= 20; ++i) {
        const double a = i / 20.0;
        const auto s = reduced_state(named_state("pure", {{"a", a}}), Subsystem::A).spectrum().values;
        const double lo = std::min(a * a, 1 - a * a), hi = std::max(a * a, 1 - a * a);
        CHECK(std::abs(s[0] - lo) < 1e-10);
        CHECK(std::abs(s[1] - hi) < 1e-10);
    }
}

TEST_CASE("random_pure") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto psi = random_pure(2, 3, seed);
        double n2 = 0;
        for (const auto& z : psi.amplitudes()) n2 += std::norm(z);
        CHECK(std::abs(n2 - 1.0) < 1e-12);
    }
    CHECK(random_pure(2, 2, 99).amplitudes() == random_pure(2, 2, 99).amplitudes());
    CHECK(random_pure(2, 2, 99).amplitudes() != random_pure(2, 2, 100).amplitudes());

    // Haar average of tr(rho_A^2) is (dA + dB) / (dA dB + 1) = 0.8 for two qubits.
    double purity = 0.0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        const auto ra = reduced_state(density_from_pure(random_pure(2, 2, 1000 + i)), Subsystem::A);
        const auto& m = ra.matrix();
        double p = 0.0;
        for (const auto& z : m.data()) p += std::norm(z);
        purity += p;
    }
    CHECK(std::abs(purity / samples - 0.8) < 0.01);
}

TEST_CASE("random_density") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(von_neumann(random_density(2, 2, 1, seed)) < 1e-8);
    for (std::size_t rank = 1; rank <= 4; ++rank)
        for (std::uint64_t seed = 0; seed < 25; ++seed)
            CHECK_NOTHROW(validate_density(random_density(2, 2, rank, seed).matrix(), 2, 2));

    double mean = 0.0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        const auto rho = random_density(2, 2, 4, 7 + i);
        for (double v : rho.spectrum().values) mean += v;
    }
    CHECK(std::abs(mean / (4.0 * samples) - 0.25) < 0.005);

    CHECK(random_density(2, 2, 3, 4).matrix() == random_density(2, 2, 3, 4).matrix());
    CHECK_THROWS_AS(random_density(2, 2, 0, 1), ValidationError);
    CHECK_THROWS_AS(random_density(2, 2, 5, 1), ValidationError);
}

TEST_CASE("state file round trip and rejection") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto rho = random_density(2, 3, 1 + seed % 6, seed);
        const auto back = parse_state(serialize_state(rho));
        CHECK(back.dim_a() == 2);
        CHECK(back.dim_b() == 3);
        CHECK(frobenius_distance(back.matrix(), rho.matrix()) < 1e-15);
    }

    const auto cc = parse_state(R"({"dimA": 2, "dimB": 2, "matrix": [
        [[0.5,0],[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[0,0]],
        [[0,0],[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[0.5,0]]]})");
    CHECK(cc.matrix() == named_state("cc-mixture").matrix());

    CHECK_THROWS_AS(parse_state(R"({"dimA": 2.0, "dimB": 1, "matrix": [[[1,0],[0,0]],[[0,0],[0,0]]]})"), ParseError);
    CHECK_THROWS_AS(parse_state(R"({"dimA": 2, "dimB": 1, "matrix": [[[1,0],[0,0]]]})"), ParseError);
    CHECK_THROWS_AS(parse_state(R"({"dimA": 2, "dimB": 1, "matrix": [[[1,0]],[[0,0]]]})"), ParseError);
    CHECK_THROWS_AS(parse_state(R"({"dimA": 2, "dimB": 1, "matrix": [[[1,0],[0,0]],[[0,0],[0]]]})"), ParseError);
    CHECK_THROWS_AS(parse_state("{not json"), ParseError);
    CHECK_THROWS_AS(parse_state(R"({"dimA": 2, "dimB": 1, "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_state("/nonexistent/state.json"), ParseError);
}
