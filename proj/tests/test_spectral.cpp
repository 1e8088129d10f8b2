#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qhlat/errors.hpp"
#include "qhlat/spectral.hpp"

using namespace qhlat;

namespace {

SpectrumReport report(std::vector<double> p) { return spectrum_report(build_hamiltonian(LatticeParams(p))); }

} // namespace

TEST_CASE("eigen_decompose input checks") {
    CHECK_THROWS_AS(eigen_decompose(ComplexMatrix::Zero(2, 3)), InputError);
    CHECK_THROWS_AS(eigen_decompose(ComplexMatrix(0, 0)), InputError);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = Complex(NAN, 0.0);
    CHECK_THROWS_AS(eigen_decompose(bad), InputError);
    CHECK_THROWS_AS(eigen_decompose(ComplexMatrix::Zero(kMaxEigenDimension + 1, 1)), InputError);
}

TEST_CASE("two-site closed form below the exceptional point") {
    const auto r = report({0.5});
    REQUIRE(r.eigenvalues.size() == 2);
    const double e = std::sqrt(1.0 - 0.25);
    CHECK(r.eigenvalues[0].real() == doctest::Approx(-e).epsilon(1e-12));
    CHECK(r.eigenvalues[1].real() == doctest::Approx(e).epsilon(1e-12));
    CHECK(r.is_real);
    CHECK(r.max_imag < 1e-12);
    CHECK(r.min_gap == doctest::Approx(2.0 * e));
    CHECK(r.residual < 1e-12);
}

TEST_CASE("two-site closed form beyond the exceptional point") {
    const auto r = report({1.2});
    CHECK_FALSE(r.is_real);
    CHECK(r.max_imag == doctest::Approx(std::sqrt(1.44 - 1.0)).epsilon(1e-10));
    CHECK(std::abs(r.eigenvalues[0].real()) < 1e-12);
}

TEST_CASE("free lattice spectrum against the cosine band") {
    for (std::size_t n : {1u, 3u, 6u, 7u}) {
        const auto r = spectrum_report(build_laplacian(n).matrix());
        std::vector<double> expect;
        for (std::size_t k = 1; k <= n; ++k) {
            expect.push_back(-2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(n + 1)));
        }
        std::sort(expect.begin(), expect.end());
        CHECK(r.is_real);
        for (std::size_t k = 0; k < n; ++k) CHECK(r.eigenvalues[k].real() == doctest::Approx(expect[k]).epsilon(1e-12));
    }
    const auto three = report({0.0, 0.0, 0.0});
    CHECK(three.eigenvalues.size() == 6);
    CHECK(three.is_real);
}

TEST_CASE("eigenvalues sorted by real then imaginary part") {
    std::vector<Complex> v = {{1.0, 0.5}, {-2.0, 0.0}, {1.0, -0.5}, {0.0, 3.0}};
    sort_eigenvalues(v);
    CHECK(v[0] == Complex(-2.0, 0.0));
    CHECK(v[1] == Complex(0.0, 3.0));
    CHECK(v[2] == Complex(1.0, -0.5));
    CHECK(v[3] == Complex(1.0, 0.5));
}

TEST_CASE("reality predicate scales with the spectrum") {
    CHECK(spectrum_is_real(std::vector<Complex>{{100.0, 5e-7}}, 1e-8));
    CHECK_FALSE(spectrum_is_real(std::vector<Complex>{{100.0, 2e-6}}, 1e-8));
    CHECK(spectrum_is_real(std::vector<Complex>{{0.1, 5e-9}}, 1e-8));
    CHECK_FALSE(spectrum_is_real(std::vector<Complex>{{0.1, 5e-8}}, 1e-8));
}

TEST_CASE("conjugate-pair closure and residuals on random PT draws") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (int draw = 0; draw < 30; ++draw) {
        std::vector<double> p(1 + static_cast<std::size_t>(draw % 5));
        for (auto& x : p) x = d(rng);
        const auto r = report(p);
        CHECK(conjugate_pair_defect(r.eigenvalues) < 1e-8);
        CHECK(r.residual < 1e-10);
    }
    CHECK(conjugate_pair_defect({{1.0, 0.5}}) == doctest::Approx(1.0));
    CHECK(conjugate_pair_defect({{3.0, 0.0}, {-1.0, 0.25}, {-1.0, -0.25}}) < 1e-15);
}

TEST_CASE("two-site exceptional point") {
    const auto res = find_exceptional_point(ParameterDirection::single_site(1, 1), 2);
    CHECK(std::abs(res.p_crit - 1.0) <= 1e-6);
    CHECK(res.p_hi - res.p_lo <= 1e-6);
    CHECK(res.p_crit == doctest::Approx(0.5 * (res.p_lo + res.p_hi)));
    CHECK(spectrum_is_real(build_hamiltonian(LatticeParams({res.p_lo})).matrix(), 1e-8));
    CHECK_FALSE(spectrum_is_real(build_hamiltonian(LatticeParams({res.p_hi})).matrix(), 1e-8));
    CHECK_FALSE(res.non_monotone);
}

TEST_CASE("boundary coupling stays critical at one for larger lattices") {
    for (std::size_t n : {2u, 3u, 5u}) {
        const auto res = find_exceptional_point(ParameterDirection::single_site(1, n), 2 * n);
        CHECK(std::abs(res.p_crit - 1.0) <= 1e-5);
    }
}

TEST_CASE("exceptional point errors") {
    CHECK_THROWS_AS(find_exceptional_point(ParameterDirection::single_site(1, 2), 2), InputError);
    ExceptionalPointOptions o;
    o.p_max = 0.5;
    CHECK_THROWS_AS(find_exceptional_point(ParameterDirection::single_site(1, 1), 2, o), NotFoundError);
    o.p_max = 2.0;
    o.max_iterations = 2;
    CHECK_THROWS_AS(find_exceptional_point(ParameterDirection::single_site(1, 1), 2, o), NumericalError);
}

TEST_CASE("alternating ten-site reality boundary lies between 0.28 and 0.29") {
    const auto dir = ParameterDirection::alternating(5);
    CHECK(spectrum_report(build_hamiltonian(direction_to_params(dir, 0.28))).is_real);
    CHECK_FALSE(spectrum_report(build_hamiltonian(direction_to_params(dir, 0.29))).is_real);
}

TEST_CASE("uniform ten-site boundary near 0.1413") {
    const auto res = find_exceptional_point(ParameterDirection::uniform(5), 10);
    CHECK(std::abs(res.p_crit - 0.1413) <= 0.05 * 0.1413);
}

TEST_CASE("exceptional point search is identical across thread counts") {
    ExceptionalPointOptions a, b;
    b.threads = 4;
    const auto dir = ParameterDirection::custom({0.3, -1.0, 0.5});
    const auto ra = find_exceptional_point(dir, 6, a);
    const auto rb = find_exceptional_point(dir, 6, b);
    CHECK(ra.p_crit == rb.p_crit);
    CHECK(ra.p_lo == rb.p_lo);
    CHECK(ra.iterations == rb.iterations);
}

TEST_CASE("domain scan: origin inside and point reflection with zero fixed couplings") {
    GridSpec g{{-1.5, 1.5, 41}, {-1.5, 1.5, 41}};
    const auto scan = scan_domain_2d(1, 2, LatticeParams({0.0, 0.0, 0.0}), g);
    REQUIRE(scan.is_real.size() == 41u * 41u);
    CHECK(g.first.centre(20) == doctest::Approx(0.0));
    CHECK(scan.real_at(20, 20));
    CHECK(scan.real_count() > 0);
    CHECK(scan.real_count() < scan.is_real.size());
    for (std::size_t a = 0; a < 41; ++a) {
        for (std::size_t b = 0; b < 41; ++b) CHECK(scan.real_at(a, b) == scan.real_at(40 - a, 40 - b));
    }
}

TEST_CASE("domain scan matches direct evaluation and is thread independent") {
    GridSpec g{{-1.0, 1.0, 9}, {-0.5, 1.0, 7}};
    const LatticeParams fixed({0.1, 0.0, 0.2});
    const auto s1 = scan_domain_2d(3, 2, fixed, g, {1e-8, 1});
    const auto s4 = scan_domain_2d(3, 2, fixed, g, {1e-8, 4});
    CHECK(s1.is_real == s4.is_real);
    CHECK(s1.max_imag == s4.max_imag);
    for (std::size_t a = 0; a < 9; ++a) {
        for (std::size_t b = 0; b < 7; ++b) {
            const auto r = report({0.1, g.second.centre(b), g.first.centre(a)});
            CHECK(s1.real_at(a, b) == r.is_real);
        }
    }
}

TEST_CASE("domain scan errors") {
    const LatticeParams fixed({0.0, 0.0});
    GridSpec g{{-1.0, 1.0, 4}, {-1.0, 1.0, 4}};
    CHECK_THROWS_AS(scan_domain_2d(1, 1, fixed, g), InputError);
    CHECK_THROWS_AS(scan_domain_2d(1, 3, fixed, g), InputError);
    CHECK_THROWS_AS(scan_domain_2d(0, 1, fixed, g), InputError);
    GridSpec empty{{-1.0, 1.0, 0}, {-1.0, 1.0, 4}};
    CHECK_THROWS_AS(scan_domain_2d(1, 2, fixed, empty), InputError);
    GridSpec flat{{1.0, 1.0, 3}, {-1.0, 1.0, 4}};
    CHECK_THROWS_AS(scan_domain_2d(1, 2, fixed, flat), InputError);
}
