#include <doctest.h>

#include <random>

#include "dpwlab/io.hpp"
#include "dpwlab/laurent.hpp"
#include "test_support.hpp"

using namespace dpwlab;
using namespace testsupport;

TEST_CASE("evaluate: identity and direct substitution") {
    const LaurentMatrix id = LaurentMatrix::identity(3);
    CHECK(id.evaluate(cplx(0.0, 1.0)).dist_identity() < 1e-15);

    // [[0, 1/lambda], [-lambda, 0]] at lambda = 1
    LaurentMatrix w(2, -1, 1);
    Mat cm(2, 2);
    cm(0, 1) = 1.0;
    w.set_coeff(-1, cm);
    Mat cp(2, 2);
    cp(1, 0) = -1.0;
    w.set_coeff(1, cp);
    const Mat v = w.evaluate(1.0);
    CHECK(std::abs(v(0, 1) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(v(1, 0) + cplx(1.0)) < 1e-15);
    CHECK(std::abs(v(0, 0)) < 1e-15);

    // I + z E12 / lambda at z = 2, lambda = 2, checked against the Horner oracle
    const LaurentMatrix g = LaurentMatrix::elementary(2, -1, 0, 1, cplx(2.0));
    const Mat got = g.evaluate(cplx(2.0));
    CHECK(std::abs(got(0, 1) - cplx(1.0)) < 1e-15);
    CHECK((got - horner_evaluate(g, cplx(2.0))).frobenius_norm() < 1e-14);
}

TEST_CASE("evaluate at lambda = 0 with negative degrees raises DomainError") {
    const LaurentMatrix g = LaurentMatrix::elementary(2, -1, 0, 1, cplx(1.0));
    CHECK_THROWS_AS(g.evaluate(cplx(0.0)), DomainError);
    CHECK(LaurentMatrix::identity(2).evaluate(cplx(0.0)).dist_identity() < 1e-15);
}

TEST_CASE("multiply: identity, nilpotent pair, pointwise oracle") {
    std::mt19937 rng(21u);
    const SymmetricSpaceSpec spec = su2_spec();
    const LaurentMatrix g = random_twisted_loop(spec, rng, 4, 0.3, 1);
    CHECK(multiply(g, LaurentMatrix::identity(2)).dist(g) < 1e-15);

    const LaurentMatrix a = LaurentMatrix::elementary(2, -1, 0, 1, cplx(1.0));
    const LaurentMatrix b = LaurentMatrix::elementary(2, -1, 0, 1, cplx(-1.0));
    CHECK(multiply(a, b).dist_identity() < 1e-15);

    // coefficients match pointwise products at 16 roots of unity
    const LaurentMatrix g2 = random_twisted_loop(spec, rng, 4, 0.3, 1);
    const LaurentMatrix prod = multiply(g, g2);
    for (const cplx& lam : unit_circle_samples(16))
        CHECK((prod.evaluate(lam) - g.evaluate(lam) * g2.evaluate(lam)).frobenius_norm() < 1e-12);
}

TEST_CASE("multiply shape mismatch raises ShapeError") {
    CHECK_THROWS_AS(multiply(LaurentMatrix::identity(2), LaurentMatrix::identity(3)), ShapeError);
}

TEST_CASE("inverse: identity, rotation loop, unipotent") {
    CHECK(inverse(LaurentMatrix::identity(2)).dist_identity() < 1e-15);

    LaurentMatrix w(2, -1, 1);
    Mat cm(2, 2);
    cm(0, 1) = 1.0;
    w.set_coeff(-1, cm);
    Mat cp(2, 2);
    cp(1, 0) = -1.0;
    w.set_coeff(1, cp);
    const LaurentMatrix wi = inverse(w);
    // adjugate by hand: [[0, -1/lambda], [lambda, 0]]
    CHECK(std::abs(wi.coeff(-1)(0, 1) + cplx(1.0)) < 1e-15);
    CHECK(std::abs(wi.coeff(1)(1, 0) - cplx(1.0)) < 1e-15);
    CHECK(multiply(w, wi).dist_identity() < 1e-15);

    const LaurentMatrix u = LaurentMatrix::elementary(2, -1, 0, 1, cplx(0.0, 2.0));
    CHECK(multiply(u, inverse(u)).dist_identity() < 1e-15);
}

TEST_CASE("inverse requires det == 1") {
    LaurentMatrix g = LaurentMatrix::identity(2);
    Mat c = Mat::identity(2);
    c(0, 0) = 2.0;
    g.set_coeff(0, c);
    CHECK_THROWS_AS(inverse(g), NotUnimodular);
}

TEST_CASE("twist residual distinguishes twisted from untwisted loops") {
    const SymmetricSpaceSpec spec = su2_spec();
    LaurentMatrix w(2, -1, 1);
    Mat cm(2, 2);
    cm(0, 1) = 1.0;
    w.set_coeff(-1, cm);
    Mat cp(2, 2);
    cp(1, 0) = -1.0;
    w.set_coeff(1, cp);
    CHECK(twist_residual(w, spec) < 1e-15);
    CHECK(twist_residual(LaurentMatrix::identity(2), spec) < 1e-15);

    // diag(lambda, 1/lambda): diagonal entries at odd powers, residual 2 ||coeff||
    LaurentMatrix d(2, -1, 1);
    Mat dm(2, 2);
    dm(1, 1) = 1.0;
    d.set_coeff(-1, dm);
    Mat dp(2, 2);
    dp(0, 0) = 1.0;
    d.set_coeff(1, dp);
    CHECK(twist_residual(d, spec) == doctest::Approx(2.0));
}

TEST_CASE("reality involution: fixed points and the diagonal example") {
    const SymmetricSpaceSpec spec = su2_spec();
    // unitary constant: fixed point
    Mat u(2, 2);
    const double c = std::cos(0.4), s = std::sin(0.4);
    u(0, 0) = c;
    u(0, 1) = s;
    u(1, 0) = -s;
    u(1, 1) = c;
    const LaurentMatrix ul = LaurentMatrix::constant(u);
    CHECK(reality_residual(ul, spec) < 1e-12);

    // diag(2, 1/2) maps to diag(1/2, 2) under the compact involution
    const LaurentMatrix d = LaurentMatrix::constant(Mat(2, 2, {cplx(2.0), cplx(0.0), cplx(0.0), cplx(0.5)}));
    const LaurentMatrix rd = reality_involution(d, spec);
    CHECK(std::abs(rd.coeff(0)(0, 0) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(rd.coeff(0)(1, 1) - cplx(2.0)) < 1e-12);

    // the closed-form CP^1 frame is reality-fixed
    const LaurentMatrix f = cp1_closed_frame(cplx(0.7, -0.2));
    CHECK(reality_residual(f, spec) < 1e-12);
}

TEST_CASE("reality involution is an involution on random loops") {
    std::mt19937 rng(22u);
    for (int n : {2, 3}) {
        const SymmetricSpaceSpec spec = alternating_spec(n);
        for (int trial = 0; trial < 100; ++trial) {
            const LaurentMatrix g = random_twisted_loop(spec, rng, 5, 0.2, 3);
            const LaurentMatrix gg = reality_involution(reality_involution(g, spec), spec);
            CHECK(gg.dist(g) < 1e-10);
        }
    }
}

TEST_CASE("adjoint degree: identity, constants, and the unipotent example") {
    CHECK(adjoint_degree(LaurentMatrix::identity(2)) == 0);
    std::mt19937 rng(23u);
    CHECK(adjoint_degree(LaurentMatrix::constant(random_k_element(su2_spec(), rng))) == 0);

    const LaurentMatrix g = LaurentMatrix::elementary(2, -1, 0, 1, cplx(1.0));
    const int k = adjoint_degree(g);
    CHECK(k == adjoint_degree_dft_oracle(g));
    CHECK(k == 2);
}

TEST_CASE("adjoint degree is subadditive on products") {
    std::mt19937 rng(24u);
    const SymmetricSpaceSpec spec = su2_spec();
    for (int trial = 0; trial < 20; ++trial) {
        const LaurentMatrix a = random_twisted_loop(spec, rng, 3, 0.2, 1);
        const LaurentMatrix b = random_twisted_loop(spec, rng, 3, 0.2, 1);
        CHECK(adjoint_degree(multiply(a, b)) <= adjoint_degree(a) + adjoint_degree(b));
    }
}

TEST_CASE("multiply then inverse returns to the identity on random loops") {
    std::mt19937 rng(25u);
    for (int n : {2, 3}) {
        const SymmetricSpaceSpec spec = alternating_spec(n);
        for (int trial = 0; trial < 25; ++trial) {
            const LaurentMatrix g = random_twisted_loop(spec, rng, 4, 0.2, 2);
            CHECK(multiply(g, inverse(g)).dist_identity() < 1e-10);
        }
    }
}

TEST_CASE("twisted loops are closed under products") {
    std::mt19937 rng(26u);
    const SymmetricSpaceSpec spec = alternating_spec(3);
    for (int trial = 0; trial < 20; ++trial) {
        const LaurentMatrix a = random_twisted_loop(spec, rng, 4, 0.2, 2);
        const LaurentMatrix b = random_twisted_loop(spec, rng, 4, 0.2, 2);
        CHECK(twist_residual(a, spec) < 1e-10);
        CHECK(twist_residual(multiply(a, b), spec) < 1e-10);
    }
}

TEST_CASE("group flags") {
    std::mt19937 rng(27u);
    const SymmetricSpaceSpec spec = su2_spec();
    const GroupElementFlags f1 = compute_flags(cp1_closed_frame(cplx(0.5, 0.1)), spec);
    CHECK(f1.is_twisted);
    CHECK(f1.is_real);
    CHECK(f1.det_is_one);
    const GroupElementFlags f2 = compute_flags(random_plus_loop(spec, rng, 2, 0.4), spec);
    CHECK(f2.is_twisted);
    CHECK(f2.det_is_one);
    CHECK_FALSE(f2.is_real);
}

TEST_CASE("loop JSON round trip is bit exact") {
    std::mt19937 rng(28u);
    const SymmetricSpaceSpec spec = alternating_spec(3);
    const LaurentMatrix g = random_twisted_loop(spec, rng, 5, 0.37, 2);
    const json j = to_json(g);
    const std::string text = j.dump();
    const LaurentMatrix back = laurent_from_json(json::parse(text));
    REQUIRE(back.lo() == g.lo());
    REQUIRE(back.hi() == g.hi());
    for (int d = g.lo(); d <= g.hi(); ++d)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                CHECK(back.coeff(d)(r, c).real() == g.coeff(d)(r, c).real());
                CHECK(back.coeff(d)(r, c).imag() == g.coeff(d)(r, c).imag());
            }
}
