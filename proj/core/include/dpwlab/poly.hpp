#pragma once

#include <vector>

#include "dpwlab/complexmat.hpp"

namespace dpwlab {

// Complex polynomial in z, ascending coefficients.
struct Poly {
    std::vector<cplx> c;

    Poly() = default;
    explicit Poly(cplx c0) : c{c0} {}
    explicit Poly(std::vector<cplx> coeffs) : c(std::move(coeffs)) {}

    static Poly one() { return Poly(cplx(1.0)); }

    bool is_zero() const;
    int degree() const { return int(c.size()) - 1; }
    cplx eval(cplx z) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(cplx s) const;

    Poly derivative() const;
    Poly antiderivative() const; // constant term zero

    void trim(double tol = 0.0);
};

// Rational function in z as a numerator/denominator pair of polynomials.
// Never simplified; desk-scale degrees make that unnecessary.
struct RationalFn {
    Poly num;
    Poly den = Poly::one();

    RationalFn() = default;
    explicit RationalFn(Poly n) : num(std::move(n)) {}
    RationalFn(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {}

    static RationalFn constant(cplx v) { return RationalFn(Poly(v)); }

    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial(double tol = 0.0) const;

    // throws PoleOnPath if |den(z)| below tol
    cplx eval(cplx z, double pole_tol = 1e-12) const;
    double denominator_magnitude(cplx z) const { return std::abs(den.eval(z)); }

    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator*(const RationalFn& o) const;
    RationalFn scaled(cplx s) const { return RationalFn(num.scaled(s), den); }
};

// n x n matrix of rational functions; the coefficient type of potentials.
struct RationalMatrix {
    int n = 0;
    std::vector<RationalFn> entries; // row-major

    RationalMatrix() = default;
    explicit RationalMatrix(int n_) : n(n_), entries(std::size_t(n_) * n_) {}

    RationalFn& at(int i, int j) { return entries[std::size_t(i) * n + j]; }
    const RationalFn& at(int i, int j) const { return entries[std::size_t(i) * n + j]; }

    Mat eval(cplx z, double pole_tol = 1e-12) const;
    double min_denominator_magnitude(cplx z) const;
    bool is_polynomial() const;
};

} // namespace dpwlab
