#include "dpwlab/verify.hpp"

#include <algorithm>
#include <cmath>

#include "dpwlab/frames.hpp"

namespace dpwlab {

double convergence_order(double coarse, double fine) {
    if (fine <= 0.0 || coarse <= 0.0) return 0.0;
    return std::log2(coarse / fine);
}

double extended_solution_residual_at(const ExtendedSolutionField& phi,
                                     const ModifiedHarmonicMap& embedded, cplx lt,
                                     bool core_only) {
    if (!phi.grid.is_grid() || !embedded.grid.is_grid())
        throw ValidationError("extended-solution residual needs rectangular grids");
    if (phi.grid.count() != embedded.grid.count())
        throw ValidationError("extended-solution residual grid mismatch");
    const int rows = phi.grid.rows, cols = phi.grid.cols;
    const double hx = phi.grid.step_x, hy = phi.grid.step_y;

    std::vector<Mat> p(phi.grid.count()), f1(phi.grid.count());
    std::vector<char> ok(phi.grid.count(), 0);
    for (int i = 0; i < phi.grid.count(); ++i) {
        if (!phi.valid[i] || !embedded.valid[i]) continue;
        p[i] = phi.samples[i].evaluate(lt);
        f1[i] = embedded.samples[i].evaluate(1.0);
        ok[i] = 1;
    }

    double worst = 0.0;
    const cplx c_hol = cplx(1.0) - cplx(1.0) / lt;
    const cplx c_anti = cplx(1.0) - lt;
    for (int r = 1; r + 1 < rows; ++r)
        for (int c = 1; c + 1 < cols; ++c) {
            const int i = phi.grid.index(r, c);
            if (core_only && !in_core_region(phi.grid, i)) continue;
            const int ix0 = phi.grid.index(r, c - 1), ix1 = phi.grid.index(r, c + 1);
            const int iy0 = phi.grid.index(r - 1, c), iy1 = phi.grid.index(r + 1, c);
            if (!(ok[i] && ok[ix0] && ok[ix1] && ok[iy0] && ok[iy1])) continue;
            const Mat f_inv = inverse(f1[i]);
            Mat ax = f_inv * (f1[ix1] - f1[ix0]);
            ax *= cplx(0.5 / (2.0 * hx)); // A = (1/2) F^-1 dF
            Mat ay = f_inv * (f1[iy1] - f1[iy0]);
            ay *= cplx(0.5 / (2.0 * hy));
            const Mat a_hol = (ax - ay * cplx(0.0, 1.0)) * cplx(0.5);
            const Mat a_anti = (ax + ay * cplx(0.0, 1.0)) * cplx(0.5);

            Mat dpx = p[ix1] - p[ix0];
            dpx *= cplx(1.0 / (2.0 * hx));
            Mat dpy = p[iy1] - p[iy0];
            dpy *= cplx(1.0 / (2.0 * hy));

            const Mat rhs_x = p[i] * (a_hol * c_hol + a_anti * c_anti);
            const Mat rhs_y = p[i] * (a_hol * (cplx(0.0, 1.0) * c_hol) +
                                      a_anti * (cplx(0.0, -1.0) * c_anti));
            worst = std::max(worst, (dpx - rhs_x).frobenius_norm());
            worst = std::max(worst, (dpy - rhs_y).frobenius_norm());
        }
    return worst;
}

ResidualReport extended_solution_residual(const ExtendedSolutionField& phi,
                                          const ModifiedHarmonicMap& embedded,
                                          const std::vector<cplx>& lambda_tildes,
                                          double tolerance) {
    ResidualReport rep;
    rep.check_name = "es";
    rep.tolerance = tolerance;
    for (const cplx& lt : lambda_tildes) {
        const double r = extended_solution_residual_at(phi, embedded, lt);
        rep.per_point.push_back(r);
        rep.max_residual = std::max(rep.max_residual, r);
    }
    rep.settle();
    return rep;
}

ResidualReport pointwise_factorization_oracle(const LaurentMatrix& gamma,
                                              const SymmetricSpaceSpec& spec,
                                              const std::vector<cplx>& lambdas, double tolerance,
                                              const FactorOptions& opts) {
    if (spec.form != RealForm::Compact)
        throw Unsupported("pointwise factorization oracle requires the compact form");
    ResidualReport rep;
    rep.check_name = "pointwiseIwasawa";
    rep.tolerance = tolerance;
    const IwasawaResult iw = iwasawa(gamma, spec, opts);
    for (const cplx& lam : lambdas) {
        const Mat value = gamma.evaluate(lam);
        const Mat u_loop = iw.unitary_part.evaluate(lam);
        const QlDecomposition ql = ql_decompose(value);
        // right diagonal-phase alignment
        const Mat overlap = ql.q.adjoint() * u_loop;
        Mat aligned = ql.q;
        for (int j = 0; j < aligned.cols(); ++j) {
            const cplx d = overlap(j, j);
            const cplx phase = (std::abs(d) == 0.0) ? cplx(1.0) : d / std::abs(d);
            for (int i = 0; i < aligned.rows(); ++i) aligned(i, j) *= phase;
        }
        const double dist = (aligned - u_loop).frobenius_norm();
        rep.per_point.push_back(dist);
        rep.max_residual = std::max(rep.max_residual, dist);
    }
    rep.settle();
    return rep;
}

bool pointwise_cell_oracle(const LaurentMatrix& gamma, const SymmetricSpaceSpec& spec,
                           const std::vector<cplx>& lambdas) {
    const auto j = spec.j_diagonal();
    const int n = spec.n;
    for (const cplx& lam : lambdas) {
        const Mat g = gamma.evaluate(lam);
        Mat gram = g.adjoint() * spec.j_matrix() * g;
        // trailing principal minors against trailing sign products of J
        for (int k = n - 1; k >= 0; --k) {
            const int m = n - k;
            Mat sub(m, m);
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) sub(r, c) = gram(k + r, k + c);
            double want = 1.0;
            for (int t = k; t < n; ++t) want *= j[t];
            const cplx det = determinant(sub);
            if (det.real() * want <= 0.0) return false;
        }
    }
    return true;
}

ResidualReport reality_twist_suite(const FrameField& field, double tolerance) {
    ResidualReport rep;
    rep.check_name = "realityTwist";
    rep.tolerance = tolerance;
    for (int i = 0; i < field.count(); ++i) {
        if (!field.in_cell[i]) continue;
        const double tw = twist_residual(field.frames[i], field.spec);
        const double re = field.spec.form == RealForm::Complexified
                              ? 0.0
                              : reality_residual(field.frames[i], field.spec);
        rep.per_point.push_back(std::max(tw, re));
        rep.max_residual = std::max(rep.max_residual, std::max(tw, re));
    }
    rep.settle();
    return rep;
}

AlgebraicityCertificate algebraicity_certificate(const FrameField& field, double tail_tol) {
    AlgebraicityCertificate cert;
    bool first = true;
    for (int i = 0; i < field.count(); ++i) {
        if (!field.in_cell[i]) continue;
        cert.max_tail = std::max(cert.max_tail, field.tail[i]);
        LaurentMatrix f = field.frames[i];
        f.trim();
        if (first) {
            cert.lo = f.lo();
            cert.hi = f.hi();
            first = false;
        } else {
            cert.lo = std::min(cert.lo, f.lo());
            cert.hi = std::max(cert.hi, f.hi());
        }
    }
    cert.is_laurent = cert.max_tail < tail_tol;
    return cert;
}

} // namespace dpwlab
