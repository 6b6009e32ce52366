#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "dpwlab/errors.hpp"

namespace dpwlab {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Sized for loop-group work at desk scale
// (n rarely above 6), so everything is plain O(n^3) with no blocking.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}
    Mat(int rows, int cols, std::initializer_list<cplx> vals);

    static Mat identity(int n);
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }
    static Mat diag(const std::vector<cplx>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    cplx& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(cplx s);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, cplx s) { return a *= s; }
    friend Mat operator*(cplx s, Mat a) { return a *= s; }
    friend Mat operator*(const Mat& a, const Mat& b);

    Mat adjoint() const;   // conjugate transpose
    Mat transpose() const;
    Mat conj() const;

    double frobenius_norm() const;
    double max_abs() const;
    cplx trace() const;

    // distance to the identity in Frobenius norm
    double dist_identity() const;

    bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    int rows_, cols_;
    std::vector<cplx> a_;
};

// LU with partial pivoting. Throws NumericalError on (numerically) singular input.
struct LuDecomposition {
    explicit LuDecomposition(Mat a);
    Mat solve(const Mat& rhs) const;
    cplx determinant() const;
    Mat inverse() const;

    Mat lu;
    std::vector<int> perm;
    int sign;
};

Mat inverse(const Mat& a);
cplx determinant(const Mat& a);

// Least squares min ||A x - b|| via Householder QR; A may be tall.
// Returns x; if residual_out is non-null stores ||A x - b||.
Mat solve_least_squares(const Mat& a, const Mat& b, double* residual_out = nullptr);

// Splitting A = Q * L with Q unitary and L lower triangular with positive
// real diagonal (the analogue of QR used by the pointwise factorization
// oracle). A must be square and invertible.
struct QlDecomposition {
    Mat q;
    Mat l;
};
QlDecomposition ql_decompose(const Mat& a);

// Solves M = V^H J V for lower-triangular V with positive real diagonal,
// where J is a +-1 diagonal signature and M is Hermitian. Fails (returns
// false) when the signature condition is violated, which signals a loop
// outside the identity Iwasawa cell.
bool j_cholesky_lower(const Mat& m, const std::vector<double>& j, Mat& v_out);

} // namespace dpwlab
