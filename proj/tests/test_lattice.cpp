#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qhlat/errors.hpp"
#include "qhlat/lattice.hpp"

using namespace qhlat;

namespace {

LatticeParams random_params(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return LatticeParams(v);
}

} // namespace

TEST_CASE("two-site Hamiltonian") {
    const auto h = build_hamiltonian(LatticeParams({0.5})).matrix();
    REQUIRE(h.rows() == 2);
    CHECK(h(0, 0) == Complex(0.0, 0.5));
    CHECK(h(1, 1) == Complex(0.0, -0.5));
    CHECK(h(0, 1) == Complex(-1.0, 0.0));
    CHECK(h(1, 0) == Complex(-1.0, 0.0));
}

TEST_CASE("six-site diagonal runs in then mirrors with opposite sign") {
    const auto h = build_hamiltonian(LatticeParams({0.1, 0.2, 0.3})).matrix();
    const double expect[] = {0.1, 0.2, 0.3, -0.3, -0.2, -0.1};
    for (int i = 0; i < 6; ++i) {
        CHECK(h(i, i) == Complex(0.0, expect[i]));
        for (int j = 0; j < 6; ++j) {
            if (std::abs(i - j) == 1) CHECK(h(i, j) == Complex(-1.0, 0.0));
            if (std::abs(i - j) > 1) CHECK(h(i, j) == Complex(0.0, 0.0));
        }
    }
}

TEST_CASE("zero couplings give the hermitian free lattice") {
    const auto h = build_hamiltonian(LatticeParams({0.0, 0.0})).matrix();
    CHECK(max_norm(h - h.adjoint()) == 0.0);
    CHECK(max_norm(h - build_laplacian(4).matrix()) == 0.0);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(LatticeParams({}), InputError);
    CHECK_THROWS_AS(LatticeParams({0.1, std::nan("")}), InputError);
    CHECK_THROWS_AS(LatticeParams({INFINITY}), InputError);
    CHECK(LatticeParams({1e6}).dimension() == 2);
}

TEST_CASE("free lattice for odd and unit sizes") {
    CHECK(build_laplacian(1).matrix().rows() == 1);
    CHECK(build_laplacian(1).matrix()(0, 0) == Complex(0.0, 0.0));
    const auto l = build_laplacian(3).matrix();
    CHECK(l(0, 1) == Complex(-1.0, 0.0));
    CHECK(l(0, 2) == Complex(0.0, 0.0));
    CHECK_THROWS_AS(build_laplacian(0), InputError);
}

TEST_CASE("PT symmetry, complex symmetry and parity similarity on random draws") {
    std::mt19937_64 rng(7);
    for (int draw = 0; draw < 40; ++draw) {
        const std::size_t n = 1 + static_cast<std::size_t>(draw % 6);
        const auto p = random_params(rng, n);
        const auto h = build_hamiltonian(p).matrix();
        CHECK(pt_symmetry_check(h));
        CHECK(max_norm(h - h.transpose()) == 0.0);
        CHECK(max_norm(h.adjoint() - h.conjugate()) == 0.0);
        const auto par = parity_matrix(h.rows());
        const ComplexMatrix flipped = par * h * par;
        CHECK(max_norm(flipped - build_hamiltonian(p.negated()).matrix()) == 0.0);
        CHECK(max_norm(flipped - h.conjugate()) == 0.0);
    }
}

TEST_CASE("pt_symmetry_check rejects other matrices") {
    ComplexMatrix m(2, 2);
    m << Complex(0, 1), -1.0, -1.0, Complex(0, 1);
    CHECK_FALSE(pt_symmetry_check(m));
    CHECK_FALSE(pt_symmetry_check(ComplexMatrix::Zero(2, 3)));
}

TEST_CASE("direction presets") {
    auto s = ParameterDirection::single_site(2, 3);
    CHECK(s.kind() == DirectionKind::SingleSite);
    CHECK(s.label() == "single:2");
    CHECK(s.unit()[1] == 1.0);
    CHECK(s.unit()[0] == 0.0);

    const auto alt = direction_to_params(ParameterDirection::alternating(4), 0.3);
    CHECK(alt[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(alt[1] == doctest::Approx(-0.3).epsilon(1e-15));
    CHECK(alt[2] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(alt[3] == doctest::Approx(-0.3).epsilon(1e-15));

    const auto uni = direction_to_params(ParameterDirection::uniform(3), 0.2);
    for (std::size_t k = 0; k < 3; ++k) CHECK(uni[k] == doctest::Approx(0.2).epsilon(1e-15));

    const auto c = ParameterDirection::custom({3.0, 4.0});
    CHECK(c.unit()[0] == doctest::Approx(0.6));
    CHECK(c.unit()[1] == doctest::Approx(0.8));
    const auto cp = direction_to_params(c, 10.0);
    CHECK(cp[0] == doctest::Approx(6.0));
    CHECK(cp[1] == doctest::Approx(8.0));
}

TEST_CASE("direction errors") {
    CHECK_THROWS_AS(ParameterDirection::custom({0.0, 0.0}), InputError);
    CHECK_THROWS_AS(ParameterDirection::custom({}), InputError);
    CHECK_THROWS_AS(ParameterDirection::single_site(0, 3), InputError);
    CHECK_THROWS_AS(ParameterDirection::single_site(4, 3), InputError);
    CHECK_THROWS_AS(ParameterDirection::parse_preset("single:x", 3), InputError);
    CHECK_THROWS_AS(ParameterDirection::parse_preset("single:5", 3), InputError);
    CHECK_THROWS_AS(ParameterDirection::parse_preset("diagonal", 3), InputError);
    CHECK(ParameterDirection::parse_preset("single:3", 3).site() == 3);
    CHECK(ParameterDirection::parse_preset("uniform", 3).kind() == DirectionKind::Uniform);
    CHECK_THROWS_AS(direction_to_params(ParameterDirection::uniform(2), -0.1), InputError);
    CHECK_THROWS_AS(direction_to_params(ParameterDirection::uniform(2), NAN), InputError);
}
