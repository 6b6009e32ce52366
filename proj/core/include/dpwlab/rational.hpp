#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "dpwlab/complexmat.hpp"

namespace dpwlab {

// Exact arithmetic for the nilpotent Picard pipeline. Doubles convert exactly
// (every IEEE double is rational), so the termination proof carries over
// verbatim to inputs parsed from JSON.
using Rational = boost::multiprecision::cpp_rational;

Rational rational_from_double(double x);
double rational_to_double(const Rational& r);

struct CRational {
    Rational re, im;

    CRational() = default;
    CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit CRational(const cplx& z)
        : re(rational_from_double(z.real())), im(rational_from_double(z.imag())) {}

    bool is_zero() const { return re == 0 && im == 0; }
    cplx to_cplx() const { return {rational_to_double(re), rational_to_double(im)}; }

    CRational operator+(const CRational& o) const { return {re + o.re, im + o.im}; }
    CRational operator-(const CRational& o) const { return {re - o.re, im - o.im}; }
    CRational operator*(const CRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CRational scaled(const Rational& s) const { return {re * s, im * s}; }
    bool operator==(const CRational& o) const { return re == o.re && im == o.im; }
};

// Polynomial in z over the complex rationals, ascending coefficients.
struct RatPoly {
    std::vector<CRational> c;

    bool is_zero() const;
    CRational eval(const CRational& z) const;
    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly antiderivative() const;
    void trim();
};

// n x n matrix with RatPoly entries; Laurent degrees handled by the caller.
struct RatPolyMatrix {
    int n = 0;
    std::vector<RatPoly> entries;

    RatPolyMatrix() = default;
    explicit RatPolyMatrix(int n_) : n(n_), entries(std::size_t(n_) * n_) {}

    static RatPolyMatrix identity(int n_);

    RatPoly& at(int i, int j) { return entries[std::size_t(i) * n + j]; }
    const RatPoly& at(int i, int j) const { return entries[std::size_t(i) * n + j]; }

    bool is_zero() const;
    RatPolyMatrix operator+(const RatPolyMatrix& o) const;
    RatPolyMatrix operator*(const RatPolyMatrix& o) const;
    RatPolyMatrix antiderivative() const;
    Mat eval_double(cplx z) const;
};

} // namespace dpwlab
