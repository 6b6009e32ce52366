#pragma once

#include <vector>

#include "dpwlab/complexmat.hpp"
#include "dpwlab/symmetric_space.hpp"

namespace dpwlab {

// Default trim threshold for coefficient Frobenius norms after arithmetic.
inline constexpr double kTrimTol = 1e-12;
// Residual threshold for structural flags (unimodularity, twist, reality).
inline constexpr double kFlagTol = 1e-10;

// An n x n matrix Laurent polynomial in the loop parameter. This is the
// universal representation for elements of the algebraic loop group: frames,
// factors, extended solutions, dressers and monodromy loops all live here.
class LaurentMatrix {
public:
    LaurentMatrix() : n_(0), lo_(0) {}
    LaurentMatrix(int n, int lo, int hi);

    static LaurentMatrix identity(int n);
    static LaurentMatrix constant(const Mat& m);
    // c * lambda^power * E_{ij} added to the identity
    static LaurentMatrix elementary(int n, int power, int i, int j, cplx c);
    // single coefficient m at degree `power`
    static LaurentMatrix monomial(const Mat& m, int power);

    int size() const { return n_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + int(coeff_.size()) - 1; }
    bool is_zero() const;
    int degree_spread() const { return hi() - lo(); }

    const Mat& coeff(int j) const; // zero matrix reference outside [lo, hi]
    Mat& coeff_mut(int j);         // grows the window as needed
    void set_coeff(int j, const Mat& m);

    Mat evaluate(cplx lambda) const;

    LaurentMatrix& operator+=(const LaurentMatrix& o);
    LaurentMatrix& operator-=(const LaurentMatrix& o);
    LaurentMatrix& operator*=(cplx s);
    friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) { return a += b; }
    friend LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) { return a -= b; }
    friend LaurentMatrix operator*(LaurentMatrix a, cplx s) { return a *= s; }
    friend LaurentMatrix operator*(cplx s, LaurentMatrix a) { return a *= s; }

    // substitutes lambda -> -lambda
    LaurentMatrix negate_parameter() const;
    // conjugate-transposes every coefficient and negates its degree,
    // i.e. the loop lambda -> (gamma(1/conj(lambda)))^H
    LaurentMatrix adjoint_reversed() const;
    LaurentMatrix conjugate_by(const Mat& g) const; // g . gamma . g^-1

    // keeps only degrees in [keep_lo, keep_hi]
    LaurentMatrix truncated(int keep_lo, int keep_hi) const;

    void trim(double tol = kTrimTol);

    double norm() const;         // max coefficient Frobenius norm
    double dist(const LaurentMatrix& o) const;
    double dist_identity() const;

private:
    int n_;
    int lo_;
    std::vector<Mat> coeff_;
};

LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b);
inline LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    return multiply(a, b);
}

// Scalar Laurent polynomial helpers used by determinant/adjugate machinery.
struct LaurentScalar {
    int lo = 0;
    std::vector<cplx> c; // ascending from lo
    int hi() const { return lo + int(c.size()) - 1; }
};
LaurentScalar det_laurent(const LaurentMatrix& a);

// True when det(gamma) == 1 identically within tol.
bool is_unimodular(const LaurentMatrix& a, double tol = kFlagTol);
void require_unimodular(const LaurentMatrix& a, const char* who);

// Adjugate inverse; valid precisely because group elements satisfy
// det(gamma) == 1, which keeps the inverse Laurent-polynomial.
LaurentMatrix inverse(const LaurentMatrix& a);

// max_j || h gamma_j h^-1 (-1)^j - gamma_j ||_F : zero iff sigma-twisted.
double twist_residual(const LaurentMatrix& a, const SymmetricSpaceSpec& spec);

// rho(gamma)(lambda) = J (gamma(1/conj lambda)^H)^-1 J^-1. Fixed points are
// loops valued in the real form on the unit circle.
LaurentMatrix reality_involution(const LaurentMatrix& a, const SymmetricSpaceSpec& spec);

double reality_residual(const LaurentMatrix& a, const SymmetricSpaceSpec& spec);

// Smallest k with Ad(gamma) supported on lambda-degrees [-k, k], measured on
// the traceless-matrix basis.
int adjoint_degree(const LaurentMatrix& a, double tol = kFlagTol);

struct GroupElementFlags {
    bool is_twisted = false;
    bool is_real = false;
    bool det_is_one = false;
};
GroupElementFlags compute_flags(const LaurentMatrix& a, const SymmetricSpaceSpec& spec,
                                double tol = kFlagTol);

} // namespace dpwlab
