#include "dpwlab/complexmat.hpp"

#include <algorithm>
#include <cmath>

namespace dpwlab {

Mat::Mat(int rows, int cols, std::initializer_list<cplx> vals) : Mat(rows, cols) {
    if (int(vals.size()) != rows * cols)
        throw ShapeError("initializer size does not match matrix shape");
    std::copy(vals.begin(), vals.end(), a_.begin());
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diag(const std::vector<cplx>& d) {
    Mat m(int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m(i, i) = d[i];
    return m;
}

Mat& Mat::operator+=(const Mat& o) {
    if (!same_shape(o)) throw ShapeError("matrix addition shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    if (!same_shape(o)) throw ShapeError("matrix subtraction shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Mat& Mat::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw ShapeError("matrix product shape mismatch");
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Mat Mat::adjoint() const {
    Mat m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Mat Mat::transpose() const {
    Mat m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Mat Mat::conj() const {
    Mat m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = std::conj((*this)(i, j));
    return m;
}

double Mat::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double Mat::max_abs() const {
    double s = 0.0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
}

cplx Mat::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double Mat::dist_identity() const {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const cplx d = (*this)(i, j) - (i == j ? cplx(1.0) : cplx(0.0));
            s += std::norm(d);
        }
    return std::sqrt(s);
}

LuDecomposition::LuDecomposition(Mat a) : lu(std::move(a)), sign(1) {
    if (lu.rows() != lu.cols()) throw ShapeError("LU requires a square matrix");
    const int n = lu.rows();
    perm.resize(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > best) { best = std::abs(lu(i, k)); piv = i; }
        if (best == 0.0) throw NumericalError("singular matrix in LU factorization");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(piv, j), lu(k, j));
            std::swap(perm[piv], perm[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            lu(i, k) /= lu(k, k);
            const cplx f = lu(i, k);
            for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
}

Mat LuDecomposition::solve(const Mat& rhs) const {
    const int n = lu.rows();
    if (rhs.rows() != n) throw ShapeError("LU solve rhs shape mismatch");
    Mat x(n, rhs.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < rhs.cols(); ++j) x(i, j) = rhs(perm[i], j);
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i)
            for (int j = 0; j < rhs.cols(); ++j) x(i, j) -= lu(i, k) * x(k, j);
    for (int k = n - 1; k >= 0; --k) {
        for (int j = 0; j < rhs.cols(); ++j) x(k, j) /= lu(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < rhs.cols(); ++j) x(i, j) -= lu(i, k) * x(k, j);
    }
    return x;
}

cplx LuDecomposition::determinant() const {
    cplx d = double(sign);
    for (int i = 0; i < lu.rows(); ++i) d *= lu(i, i);
    return d;
}

Mat LuDecomposition::inverse() const { return solve(Mat::identity(lu.rows())); }

Mat inverse(const Mat& a) { return LuDecomposition(a).inverse(); }

cplx determinant(const Mat& a) { return LuDecomposition(a).determinant(); }

Mat solve_least_squares(const Mat& a, const Mat& b, double* residual_out) {
    const int m = a.rows(), n = a.cols();
    if (b.rows() != m) throw ShapeError("least squares rhs shape mismatch");
    if (m < n) throw ShapeError("least squares requires rows >= cols");
    Mat r = a;
    Mat qtb = b;
    // Householder triangularization applied to [A | b].
    for (int k = 0; k < n; ++k) {
        double xnorm = 0.0;
        for (int i = k; i < m; ++i) xnorm += std::norm(r(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) throw NumericalError("rank-deficient least squares system");
        const cplx rkk = r(k, k);
        const double akk = std::abs(rkk);
        const cplx phase = (akk == 0.0) ? cplx(1.0) : rkk / akk;
        const cplx alpha = -phase * xnorm;
        // v = x - alpha e_k
        std::vector<cplx> v(m - k);
        v[0] = rkk - alpha;
        for (int i = k + 1; i < m; ++i) v[i - k] = r(i, k);
        double vnorm2 = 0.0;
        for (const auto& t : v) vnorm2 += std::norm(t);
        if (vnorm2 == 0.0) continue;
        auto apply = [&](Mat& mat, int col0) {
            for (int j = col0; j < mat.cols(); ++j) {
                cplx dot = 0.0;
                for (int i = k; i < m; ++i) dot += std::conj(v[i - k]) * mat(i, j);
                const cplx f = 2.0 * dot / vnorm2;
                for (int i = k; i < m; ++i) mat(i, j) -= f * v[i - k];
            }
        };
        apply(r, k);
        apply(qtb, 0);
    }
    Mat x(n, b.cols());
    for (int j = 0; j < b.cols(); ++j)
        for (int k = n - 1; k >= 0; --k) {
            cplx s = qtb(k, j);
            for (int i = k + 1; i < n; ++i) s -= r(k, i) * x(i, j);
            x(k, j) = s / r(k, k);
        }
    if (residual_out) {
        double s = 0.0;
        for (int j = 0; j < b.cols(); ++j)
            for (int i = n; i < m; ++i) s += std::norm(qtb(i, j));
        *residual_out = std::sqrt(s);
    }
    return x;
}

QlDecomposition ql_decompose(const Mat& a) {
    if (a.rows() != a.cols()) throw ShapeError("QL decomposition requires a square matrix");
    const int n = a.rows();
    // Modified Gram-Schmidt on columns right-to-left: column j of Q spans the
    // orthogonal complement of columns j+1..n-1, which yields a lower
    // triangular coefficient matrix L.
    Mat q = a;
    Mat l(n, n);
    for (int j = n - 1; j >= 0; --j) {
        for (int k = n - 1; k > j; --k) {
            cplx dot = 0.0;
            for (int i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
            l(k, j) = dot;
            for (int i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw NumericalError("singular matrix in QL decomposition");
        l(j, j) = nrm;
        for (int i = 0; i < n; ++i) q(i, j) /= nrm;
    }
    return {q, l};
}

bool j_cholesky_lower(const Mat& m, const std::vector<double>& j, Mat& v_out) {
    const int n = m.rows();
    if (m.cols() != n || int(j.size()) != n) throw ShapeError("j_cholesky shape mismatch");
    // Recursion runs from the bottom-right corner: with V lower triangular,
    // (V^H J V)(n-1,n-1) involves only the last diagonal entry of V.
    Mat w = m;
    Mat v(n, n);
    for (int k = n - 1; k >= 0; --k) {
        const cplx pivot = w(k, k);
        const double p = pivot.real();
        if (std::abs(pivot.imag()) > 1e-8 * (1.0 + std::abs(p))) return false;
        if (p * j[k] <= 0.0) return false;
        const double d = std::sqrt(p * j[k]);
        v(k, k) = d;
        for (int i = 0; i < k; ++i) v(k, i) = std::conj(w(i, k)) / (d * j[k]);
        // Schur update of the leading (k x k) block.
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                w(r, c) -= std::conj(v(k, r)) * j[k] * v(k, c);
    }
    v_out = v;
    return true;
}

} // namespace dpwlab
