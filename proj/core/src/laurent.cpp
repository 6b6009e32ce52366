#include "dpwlab/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace dpwlab {

namespace {

const Mat& zero_mat(int n) {
    static thread_local Mat z;
    if (z.rows() != n) z = Mat::zero(n, n);
    return z;
}

LaurentScalar scalar_add(const LaurentScalar& a, const LaurentScalar& b) {
    if (a.c.empty()) return b;
    if (b.c.empty()) return a;
    LaurentScalar r;
    r.lo = std::min(a.lo, b.lo);
    const int hi = std::max(a.hi(), b.hi());
    r.c.assign(std::size_t(hi - r.lo + 1), cplx(0.0));
    for (int j = a.lo; j <= a.hi(); ++j) r.c[j - r.lo] += a.c[j - a.lo];
    for (int j = b.lo; j <= b.hi(); ++j) r.c[j - r.lo] += b.c[j - b.lo];
    return r;
}

LaurentScalar scalar_mul(const LaurentScalar& a, const LaurentScalar& b) {
    LaurentScalar r;
    if (a.c.empty() || b.c.empty()) return r;
    r.lo = a.lo + b.lo;
    r.c.assign(a.c.size() + b.c.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

LaurentScalar scalar_neg(LaurentScalar a) {
    for (auto& v : a.c) v = -v;
    return a;
}

// determinant of the submatrix of `a` given by row/col index lists
LaurentScalar det_minor(const LaurentMatrix& a, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    const int m = int(rows.size());
    if (m == 1) {
        LaurentScalar s;
        s.lo = a.lo();
        s.c.resize(std::size_t(a.hi() - a.lo() + 1));
        for (int j = a.lo(); j <= a.hi(); ++j) s.c[j - a.lo()] = a.coeff(j)(rows[0], cols[0]);
        return s;
    }
    LaurentScalar acc;
    for (int k = 0; k < m; ++k) {
        std::vector<int> sub_rows(rows.begin() + 1, rows.end());
        std::vector<int> sub_cols;
        sub_cols.reserve(m - 1);
        for (int t = 0; t < m; ++t)
            if (t != k) sub_cols.push_back(cols[t]);
        LaurentScalar entry;
        entry.lo = a.lo();
        entry.c.resize(std::size_t(a.hi() - a.lo() + 1));
        for (int j = a.lo(); j <= a.hi(); ++j) entry.c[j - a.lo()] = a.coeff(j)(rows[0], cols[k]);
        LaurentScalar term = scalar_mul(entry, det_minor(a, sub_rows, sub_cols));
        if (k % 2 == 1) term = scalar_neg(term);
        acc = scalar_add(acc, term);
    }
    return acc;
}

} // namespace

LaurentMatrix::LaurentMatrix(int n, int lo, int hi) : n_(n), lo_(lo) {
    if (n < 1) throw ShapeError("loop size must be >= 1");
    if (lo > hi) throw ShapeError("loop degree bounds require lo <= hi");
    coeff_.assign(std::size_t(hi - lo + 1), Mat::zero(n, n));
}

LaurentMatrix LaurentMatrix::identity(int n) {
    LaurentMatrix a(n, 0, 0);
    a.coeff_[0] = Mat::identity(n);
    return a;
}

LaurentMatrix LaurentMatrix::constant(const Mat& m) {
    if (m.rows() != m.cols()) throw ShapeError("constant loop requires a square matrix");
    LaurentMatrix a(m.rows(), 0, 0);
    a.coeff_[0] = m;
    return a;
}

LaurentMatrix LaurentMatrix::elementary(int n, int power, int i, int j, cplx c) {
    LaurentMatrix a = identity(n);
    a.coeff_mut(power)(i, j) += c;
    return a;
}

LaurentMatrix LaurentMatrix::monomial(const Mat& m, int power) {
    if (m.rows() != m.cols()) throw ShapeError("monomial loop requires a square matrix");
    LaurentMatrix a(m.rows(), power, power);
    a.coeff_[0] = m;
    return a;
}

bool LaurentMatrix::is_zero() const {
    for (const auto& m : coeff_)
        if (m.frobenius_norm() != 0.0) return false;
    return true;
}

const Mat& LaurentMatrix::coeff(int j) const {
    if (j < lo_ || j > hi()) return zero_mat(n_);
    return coeff_[std::size_t(j - lo_)];
}

Mat& LaurentMatrix::coeff_mut(int j) {
    if (j < lo_) {
        coeff_.insert(coeff_.begin(), std::size_t(lo_ - j), Mat::zero(n_, n_));
        lo_ = j;
    } else if (j > hi()) {
        coeff_.insert(coeff_.end(), std::size_t(j - hi()), Mat::zero(n_, n_));
    }
    return coeff_[std::size_t(j - lo_)];
}

void LaurentMatrix::set_coeff(int j, const Mat& m) {
    if (m.rows() != n_ || m.cols() != n_) throw ShapeError("coefficient shape mismatch");
    coeff_mut(j) = m;
}

Mat LaurentMatrix::evaluate(cplx lambda) const {
    if (lambda == cplx(0.0)) {
        LaurentMatrix t = *this;
        t.trim();
        if (t.lo() < 0 && !t.is_zero())
            throw DomainError("evaluation at lambda = 0 with negative-degree coefficients");
        Mat out = Mat::zero(n_, n_);
        if (t.lo() <= 0 && t.hi() >= 0) out = t.coeff(0);
        return out;
    }
    Mat out = Mat::zero(n_, n_);
    const int h = hi();
    cplx lp = 1.0;
    for (int j = 0; j <= h; ++j) {
        if (j >= lo_) {
            Mat t = coeff(j);
            t *= lp;
            out += t;
        }
        lp *= lambda;
    }
    const cplx li = cplx(1.0) / lambda;
    lp = 1.0;
    for (int j = -1; j >= lo_; --j) {
        lp *= li;
        if (j <= h) {
            Mat t = coeff(j);
            t *= lp;
            out += t;
        }
    }
    return out;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& o) {
    if (n_ != o.n_) throw ShapeError("loop addition size mismatch");
    for (int j = o.lo(); j <= o.hi(); ++j) coeff_mut(j) += o.coeff(j);
    return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& o) {
    if (n_ != o.n_) throw ShapeError("loop subtraction size mismatch");
    for (int j = o.lo(); j <= o.hi(); ++j) coeff_mut(j) -= o.coeff(j);
    return *this;
}

LaurentMatrix& LaurentMatrix::operator*=(cplx s) {
    for (auto& m : coeff_) m *= s;
    return *this;
}

LaurentMatrix LaurentMatrix::negate_parameter() const {
    LaurentMatrix out = *this;
    for (int j = lo_; j <= hi(); ++j)
        if (((j % 2) + 2) % 2 == 1) out.coeff_mut(j) *= cplx(-1.0);
    return out;
}

LaurentMatrix LaurentMatrix::adjoint_reversed() const {
    LaurentMatrix out(n_, -hi(), -lo_);
    for (int j = lo_; j <= hi(); ++j) out.set_coeff(-j, coeff(j).adjoint());
    return out;
}

LaurentMatrix LaurentMatrix::conjugate_by(const Mat& g) const {
    const Mat gi = dpwlab::inverse(g);
    LaurentMatrix out(n_, lo_, hi());
    for (int j = lo_; j <= hi(); ++j) out.set_coeff(j, g * coeff(j) * gi);
    out.trim();
    return out;
}

LaurentMatrix LaurentMatrix::truncated(int keep_lo, int keep_hi) const {
    LaurentMatrix out(n_, keep_lo, keep_hi);
    for (int j = std::max(lo_, keep_lo); j <= std::min(hi(), keep_hi); ++j)
        out.set_coeff(j, coeff(j));
    return out;
}

void LaurentMatrix::trim(double tol) {
    int new_lo = lo_, new_hi = hi();
    while (new_lo < new_hi && coeff(new_lo).frobenius_norm() <= tol) ++new_lo;
    while (new_hi > new_lo && coeff(new_hi).frobenius_norm() <= tol) --new_hi;
    if (new_lo == new_hi && coeff(new_lo).frobenius_norm() <= tol) {
        // identically zero: normalize the window to degree 0
        coeff_.assign(1, Mat::zero(n_, n_));
        lo_ = 0;
        return;
    }
    if (new_lo != lo_ || new_hi != hi()) {
        std::vector<Mat> kept(coeff_.begin() + (new_lo - lo_), coeff_.begin() + (new_hi - lo_ + 1));
        coeff_ = std::move(kept);
        lo_ = new_lo;
    }
}

double LaurentMatrix::norm() const {
    double s = 0.0;
    for (const auto& m : coeff_) s = std::max(s, m.frobenius_norm());
    return s;
}

double LaurentMatrix::dist(const LaurentMatrix& o) const {
    if (n_ != o.n_) throw ShapeError("loop distance size mismatch");
    double s = 0.0;
    for (int j = std::min(lo_, o.lo()); j <= std::max(hi(), o.hi()); ++j)
        s = std::max(s, (coeff(j) - o.coeff(j)).frobenius_norm());
    return s;
}

double LaurentMatrix::dist_identity() const { return dist(identity(n_)); }

LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.size() != b.size()) throw ShapeError("loop product size mismatch");
    LaurentMatrix out(a.size(), a.lo() + b.lo(), a.hi() + b.hi());
    for (int ja = a.lo(); ja <= a.hi(); ++ja) {
        if (a.coeff(ja).frobenius_norm() == 0.0) continue;
        for (int jb = b.lo(); jb <= b.hi(); ++jb)
            out.coeff_mut(ja + jb) += a.coeff(ja) * b.coeff(jb);
    }
    out.trim();
    return out;
}

LaurentScalar det_laurent(const LaurentMatrix& a) {
    std::vector<int> idx(a.size());
    for (int i = 0; i < a.size(); ++i) idx[i] = i;
    return det_minor(a, idx, idx);
}

bool is_unimodular(const LaurentMatrix& a, double tol) {
    const LaurentScalar d = det_laurent(a);
    for (int j = d.lo; j <= d.hi(); ++j) {
        const cplx want = (j == 0) ? cplx(1.0) : cplx(0.0);
        if (std::abs(d.c[j - d.lo] - want) > tol) return false;
    }
    return d.lo <= 0 && d.hi() >= 0;
}

void require_unimodular(const LaurentMatrix& a, const char* who) {
    if (!is_unimodular(a))
        throw NotUnimodular(std::string(who) + " requires det(gamma) == 1 as a Laurent polynomial");
}

LaurentMatrix inverse(const LaurentMatrix& a) {
    require_unimodular(a, "inverse");
    const int n = a.size();
    if (n == 1) return LaurentMatrix::identity(1);
    LaurentMatrix adj(n, 0, 0);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int t = 0; t < n; ++t) {
                if (t != i) rows.push_back(t);
                if (t != j) cols.push_back(t);
            }
            LaurentScalar cof = det_minor(a, rows, cols);
            if ((i + j) % 2 == 1) cof = scalar_neg(cof);
            // adjugate transposes the cofactor matrix
            for (int d = cof.lo; d <= cof.hi(); ++d)
                if (cof.c[d - cof.lo] != cplx(0.0)) adj.coeff_mut(d)(j, i) += cof.c[d - cof.lo];
        }
    adj.trim();
    return adj;
}

double twist_residual(const LaurentMatrix& a, const SymmetricSpaceSpec& spec) {
    if (a.size() != spec.n) throw ShapeError("twist residual size mismatch");
    double s = 0.0;
    for (int j = a.lo(); j <= a.hi(); ++j) {
        const double sign = (((j % 2) + 2) % 2 == 1) ? -1.0 : 1.0;
        Mat t(a.size(), a.size());
        const Mat& c = a.coeff(j);
        for (int r = 0; r < a.size(); ++r)
            for (int cc = 0; cc < a.size(); ++cc)
                t(r, cc) = sign * spec.h[r] * c(r, cc) * spec.h[cc] - c(r, cc);
        s = std::max(s, t.frobenius_norm());
    }
    return s;
}

LaurentMatrix reality_involution(const LaurentMatrix& a, const SymmetricSpaceSpec& spec) {
    if (a.size() != spec.n) throw ShapeError("reality involution size mismatch");
    require_unimodular(a, "reality_involution");
    const LaurentMatrix rev = a.adjoint_reversed();
    LaurentMatrix inv = inverse(rev);
    const auto j = spec.j_diagonal();
    LaurentMatrix out(a.size(), inv.lo(), inv.hi());
    for (int d = inv.lo(); d <= inv.hi(); ++d) {
        Mat m = inv.coeff(d);
        for (int r = 0; r < a.size(); ++r)
            for (int c = 0; c < a.size(); ++c) m(r, c) = j[r] * m(r, c) * j[c];
        out.set_coeff(d, m);
    }
    out.trim();
    return out;
}

double reality_residual(const LaurentMatrix& a, const SymmetricSpaceSpec& spec) {
    return reality_involution(a, spec).dist(a);
}

int adjoint_degree(const LaurentMatrix& a, double tol) {
    require_unimodular(a, "adjoint_degree");
    const int n = a.size();
    const LaurentMatrix ainv = inverse(a);
    int k = 0;
    auto probe = [&](const Mat& basis) {
        LaurentMatrix conj = multiply(multiply(a, LaurentMatrix::constant(basis)), ainv);
        for (int j = conj.lo(); j <= conj.hi(); ++j)
            if (conj.coeff(j).frobenius_norm() > tol) k = std::max(k, std::abs(j));
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Mat b(n, n);
            b(i, j) = 1.0;
            probe(b);
        }
    for (int i = 0; i + 1 < n; ++i) {
        Mat b(n, n);
        b(i, i) = 1.0;
        b(n - 1, n - 1) = -1.0;
        probe(b);
    }
    return k;
}

GroupElementFlags compute_flags(const LaurentMatrix& a, const SymmetricSpaceSpec& spec,
                                double tol) {
    GroupElementFlags f;
    f.det_is_one = is_unimodular(a, tol);
    f.is_twisted = twist_residual(a, spec) < tol;
    f.is_real = f.det_is_one && reality_residual(a, spec) < tol;
    return f;
}

} // namespace dpwlab
