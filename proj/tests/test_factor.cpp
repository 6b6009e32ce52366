#include <doctest.h>

#include <random>

#include "dpwlab/factorization.hpp"
#include "dpwlab/verify.hpp"
#include "test_support.hpp"

using namespace dpwlab;
using namespace testsupport;

TEST_CASE("birkhoff: plus loops split trivially") {
    std::mt19937 rng(31u);
    const LaurentMatrix g = random_plus_loop(su2_spec(), rng, 2, 0.4);
    const BirkhoffResult r = birkhoff(g);
    CHECK(r.minus.dist_identity() < 1e-12);
    CHECK(r.plus.dist(g) < 1e-12);
}

TEST_CASE("birkhoff recovers a constructed two-sided product") {
    // (I + E12/lambda)(I + lambda E21): unique normalized splitting
    const LaurentMatrix m = LaurentMatrix::elementary(2, -1, 0, 1, cplx(1.0));
    const LaurentMatrix p = LaurentMatrix::elementary(2, 1, 1, 0, cplx(1.0));
    const BirkhoffResult r = birkhoff(multiply(m, p));
    CHECK(r.minus.dist(m) < 1e-10);
    CHECK(r.plus.dist(p) < 1e-10);
    CHECK(r.residual < 1e-10);
}

TEST_CASE("birkhoff rejects the rotation middle term") {
    LaurentMatrix w(2, -1, 1);
    Mat cm(2, 2);
    cm(0, 1) = 1.0;
    w.set_coeff(-1, cm);
    Mat cp(2, 2);
    cp(1, 0) = -1.0;
    w.set_coeff(1, cp);
    CHECK_THROWS_AS(birkhoff(w), NotInBigCell);
}

TEST_CASE("birkhoff surfaces degenerate input instead of silently splitting") {
    LaurentMatrix g = LaurentMatrix::identity(2);
    Mat c(2, 2);
    c(0, 0) = 1.0; // rank-deficient constant term, det != 1
    g.set_coeff(0, c);
    CHECK_THROWS_AS(birkhoff(g), NotUnimodular);
}

TEST_CASE("birkhoff round trip and minus-factor uniqueness on random loops") {
    std::mt19937 rng(32u);
    for (int n : {2, 3}) {
        const SymmetricSpaceSpec spec = alternating_spec(n);
        for (int trial = 0; trial < 40; ++trial) {
            const LaurentMatrix g = random_near_identity_loop(spec, rng, 0.1, 2);
            const BirkhoffResult r1 = birkhoff(g);
            CHECK(multiply(r1.minus, r1.plus).dist(g) < 1e-8);
            FactorOptions deeper;
            deeper.depth = n * std::max(1, -g.lo()) + 2;
            const BirkhoffResult r2 = birkhoff(g, deeper);
            CHECK(r1.minus.dist(r2.minus) < 1e-8);
        }
    }
}

TEST_CASE("iwasawa: real input is returned unchanged") {
    std::mt19937 rng(33u);
    const SymmetricSpaceSpec spec = su2_spec();
    const LaurentMatrix g = random_real_loop(spec, rng, 2, 0.4);
    const IwasawaResult r = iwasawa(g, spec);
    REQUIRE(r.cell == CellFlag::IdentityCell);
    CHECK(r.unitary_part.dist(g) < 1e-9);
    CHECK(r.plus_part.dist_identity() < 1e-9);
}

TEST_CASE("iwasawa closed form at the CP^1 point z = 1") {
    const SymmetricSpaceSpec spec = su2_spec();
    const LaurentMatrix g = LaurentMatrix::elementary(2, -1, 0, 1, cplx(1.0));
    const IwasawaResult r = iwasawa(g, spec);
    REQUIRE(r.cell == CellFlag::IdentityCell);

    const double s = 1.0 / std::sqrt(2.0);
    CHECK(r.unitary_part.dist(cp1_closed_frame(cplx(1.0))) < 1e-10);
    // plusPart = (1/sqrt 2) [[1, 0], [lambda, 2]]
    CHECK(std::abs(r.plus_part.coeff(0)(0, 0) - cplx(s)) < 1e-10);
    CHECK(std::abs(r.plus_part.coeff(0)(1, 1) - cplx(2.0 * s)) < 1e-10);
    CHECK(std::abs(r.plus_part.coeff(1)(1, 0) - cplx(s)) < 1e-10);
    CHECK(std::abs(r.plus_part.coeff(0)(1, 0)) < 1e-10);
    CHECK(std::abs(r.plus_part.coeff(0)(0, 1)) < 1e-10);

    CHECK(r.reconstruction_residual < 1e-10);
    CHECK(r.reality_residual < 1e-10);
}

TEST_CASE("iwasawa plus part is normalized at lambda = 0") {
    std::mt19937 rng(34u);
    const SymmetricSpaceSpec spec = alternating_spec(3);
    for (int trial = 0; trial < 10; ++trial) {
        const LaurentMatrix g = random_near_identity_loop(spec, rng, 0.1, 2);
        const IwasawaResult r = iwasawa(g, spec);
        REQUIRE(r.cell == CellFlag::IdentityCell);
        const Mat b0 = r.plus_part.evaluate(cplx(0.0));
        for (int i = 0; i < 3; ++i) {
            CHECK(b0(i, i).imag() == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(b0(i, i).real() > 0.0);
            for (int j = 0; j < i; ++j) CHECK(std::abs(b0(i, j)) < 1e-9);
        }
        CHECK(r.plus_part.lo() >= 0);
    }
}

TEST_CASE("indefinite iwasawa: inside and outside the unit disc") {
    const SymmetricSpaceSpec spec = su11_spec();
    // |z| < 1: identity cell with the hyperbolic scaling factors
    for (double x : {0.3, 0.6, 0.9}) {
        const LaurentMatrix g = LaurentMatrix::elementary(2, -1, 0, 1, cplx(x));
        const IwasawaResult r = iwasawa(g, spec);
        REQUIRE(r.cell == CellFlag::IdentityCell);
        CHECK(r.reconstruction_residual < 1e-8);
        CHECK(r.reality_residual < 1e-8);
        const double s = std::sqrt(1.0 - x * x);
        CHECK(std::abs(r.plus_part.coeff(0)(0, 0) - cplx(1.0 / s)) < 1e-8);
    }
    // |z| >= 1: outside the identity cell
    for (double x : {1.0, 1.5}) {
        const LaurentMatrix g = LaurentMatrix::elementary(2, -1, 0, 1, cplx(x));
        const IwasawaResult r = iwasawa(g, spec);
        CHECK(r.cell == CellFlag::OutsideCell);
    }
}

TEST_CASE("indefinite residuals blow up toward the cell boundary") {
    const SymmetricSpaceSpec spec = su11_spec();
    double previous = 0.0;
    for (double x : {0.9, 0.99, 0.999}) {
        const LaurentMatrix g = LaurentMatrix::elementary(2, -1, 0, 1, cplx(x));
        const IwasawaResult r = iwasawa(g, spec);
        REQUIRE(r.cell == CellFlag::IdentityCell);
        const double growth = r.plus_part.norm();
        CHECK(growth > previous);
        previous = growth;
    }
}

TEST_CASE("indefinite cell decision agrees with the pointwise signature oracle") {
    const SymmetricSpaceSpec spec = su11_spec();
    const auto lams = unit_circle_samples(32);
    for (double x : {0.2, 0.5, 0.8, 1.2, 1.7}) {
        const LaurentMatrix g = LaurentMatrix::elementary(2, -1, 0, 1, cplx(x));
        const IwasawaResult r = iwasawa(g, spec);
        const bool in_cell = r.cell == CellFlag::IdentityCell;
        CHECK(in_cell == pointwise_cell_oracle(g, spec, lams));
    }
}

TEST_CASE("compact iwasawa succeeds near unitary loops") {
    std::mt19937 rng(35u);
    const SymmetricSpaceSpec spec = su2_spec();
    for (int trial = 0; trial < 30; ++trial) {
        const LaurentMatrix base = random_real_loop(spec, rng, 2, 0.5);
        const LaurentMatrix bump = random_near_identity_loop(spec, rng, 0.09, 1);
        const LaurentMatrix g = multiply(base, bump);
        const IwasawaResult r = iwasawa(g, spec);
        REQUIRE(r.cell == CellFlag::IdentityCell);
        CHECK(r.reconstruction_residual < 1e-8);
        CHECK(r.reality_residual < 1e-8);
    }
}

TEST_CASE("round trip helpers") {
    CHECK(birkhoff_round_trip_residual(LaurentMatrix::identity(2)) == 0.0);
    CHECK(iwasawa_round_trip_residual(LaurentMatrix::identity(2), su2_spec()) < 1e-12);

    std::mt19937 rng(36u);
    const SymmetricSpaceSpec spec = su2_spec();
    for (int trial = 0; trial < 100; ++trial) {
        const LaurentMatrix g = random_near_identity_loop(spec, rng, 0.1, 2);
        CHECK(birkhoff_round_trip_residual(g) < 1e-8);
        CHECK(iwasawa_round_trip_residual(g, spec) < 1e-8);
    }
}

TEST_CASE("batch APIs match the per-item calls") {
    std::mt19937 rng(37u);
    const SymmetricSpaceSpec spec = su2_spec();
    std::vector<LaurentMatrix> loops;
    for (int i = 0; i < 8; ++i) loops.push_back(random_near_identity_loop(spec, rng, 0.1, 1));
    const auto bk = birkhoff_batch(loops);
    const auto iw = iwasawa_batch(loops, spec);
    REQUIRE(bk.size() == loops.size());
    REQUIRE(iw.size() == loops.size());
    for (std::size_t i = 0; i < loops.size(); ++i) {
        CHECK(bk[i].minus.dist(birkhoff(loops[i]).minus) < 1e-12);
        CHECK(iw[i].unitary_part.dist(iwasawa(loops[i], spec).unitary_part) < 1e-12);
    }
}
