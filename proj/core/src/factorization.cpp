#include "dpwlab/factorization.hpp"

#include <algorithm>
#include <cmath>

namespace dpwlab {

namespace {

// The ansatz X = e + sum_{j=1..D} lambda^-j C_j acts on gamma from the left,
// so each row of the C_j solves an independent linear system with the same
// coefficient matrix: A[(m,col),(j,c)] = gamma_{m+j}(c,col).
BirkhoffResult birkhoff_impl(const LaurentMatrix& gamma, int depth, double tol) {
    require_unimodular(gamma, "birkhoff");
    LaurentMatrix g = gamma;
    g.trim();
    const int n = g.size();
    BirkhoffResult out;
    if (g.lo() >= 0) {
        out.minus = LaurentMatrix::identity(n);
        out.plus = g;
        out.residual = 0.0;
        return out;
    }
    const int d = (depth > 0) ? depth : n * (-g.lo());
    const int m_lo = g.lo() - d; // most negative degree of X * gamma
    const int num_deg = -m_lo;   // target degrees -1 .. m_lo
    const int rows = num_deg * n;
    const int cols = d * n;
    if (rows < cols)
        throw NotInBigCell("Toeplitz system underdetermined; increase loop degree window");
    Mat a(rows, cols);
    Mat b(rows, n);
    for (int m = -1; m >= m_lo; --m) {
        const int block = (-m) - 1;
        for (int col = 0; col < n; ++col) {
            const int r = block * n + col;
            for (int j = 1; j <= d; ++j) {
                const Mat& gj = g.coeff(m + j);
                for (int c = 0; c < n; ++c) a(r, (j - 1) * n + c) = gj(c, col);
            }
            const Mat& gm = g.coeff(m);
            for (int row_idx = 0; row_idx < n; ++row_idx) b(r, row_idx) = -gm(row_idx, col);
        }
    }
    double residual = 0.0;
    Mat x;
    try {
        x = solve_least_squares(a, b, &residual);
    } catch (const NumericalError&) {
        throw NotInBigCell("block-Toeplitz system singular; loop lies outside the big cell");
    }
    if (residual > tol)
        throw NotInBigCell("block-Toeplitz residual " + std::to_string(residual) +
                           " exceeds tolerance; loop lies outside the big cell");
    LaurentMatrix xloop = LaurentMatrix::identity(n);
    for (int j = 1; j <= d; ++j) {
        Mat cj(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) cj(r, c) = x((j - 1) * n + c, r);
        if (cj.frobenius_norm() > 0.0) xloop.set_coeff(-j, cj);
    }
    xloop.trim();
    LaurentMatrix plus = multiply(xloop, g);
    plus = plus.truncated(0, std::max(plus.hi(), 0));
    plus.trim();
    out.minus = inverse(xloop);
    out.plus = plus;
    out.residual = std::max(residual, multiply(out.minus, out.plus).dist(g));
    return out;
}

} // namespace

BirkhoffResult birkhoff(const LaurentMatrix& gamma, const FactorOptions& opts) {
    return birkhoff_impl(gamma, opts.depth, opts.tol);
}

IwasawaResult iwasawa(const LaurentMatrix& gamma, const SymmetricSpaceSpec& spec,
                      const FactorOptions& opts) {
    if (spec.form == RealForm::Complexified)
        throw ValidationError("iwasawa requires a compact or indefinite real form");
    require_unimodular(gamma, "iwasawa");
    if (twist_residual(gamma, spec) > opts.tol)
        throw ValidationError("iwasawa input is not sigma-twisted");
    const bool compact = spec.form == RealForm::Compact;
    const int n = spec.n;

    auto fail = [&](const std::string& why) -> IwasawaResult {
        if (compact)
            throw NumericalError("compact Iwasawa failed (" + why +
                                 "); the compact identity cell covers the loop group, so this "
                                 "is a numerical issue");
        IwasawaResult r;
        r.cell = CellFlag::OutsideCell;
        return r;
    };

    const LaurentMatrix rho_g = reality_involution(gamma, spec);
    const LaurentMatrix s = multiply(inverse(rho_g), gamma);

    BirkhoffResult bk;
    try {
        bk = birkhoff(s, opts);
    } catch (const NotInBigCell& e) {
        return fail(std::string("Birkhoff split of the symmetrized loop failed: ") + e.what());
    }

    // H = rho(S+) S- must be lambda-independent.
    const LaurentMatrix hloop = multiply(reality_involution(bk.plus, spec), bk.minus);
    const Mat h0 = hloop.coeff(0);
    double nonconst = 0.0;
    for (int j = hloop.lo(); j <= hloop.hi(); ++j)
        if (j != 0) nonconst = std::max(nonconst, hloop.coeff(j).frobenius_norm());
    if (nonconst > opts.tol * (1.0 + h0.frobenius_norm()))
        return fail("symmetrized factor H is not constant in lambda");

    const auto jdiag = spec.j_diagonal();
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) m(i, c) = jdiag[i] * h0(i, c);
    const double herm = (m - m.adjoint()).frobenius_norm();
    if (herm > opts.tol * (1.0 + m.frobenius_norm()))
        return fail("signature Gram matrix is not Hermitian");
    // symmetrize before the Cholesky step
    Mat msym = m;
    msym += m.adjoint();
    msym *= 0.5;

    Mat v;
    if (!j_cholesky_lower(msym, jdiag, v))
        return fail("signature Cholesky of J*H failed");

    IwasawaResult out;
    out.plus_part = multiply(LaurentMatrix::constant(v), bk.plus);
    out.unitary_part = multiply(gamma, inverse(out.plus_part));
    out.unitary_part.trim();
    out.plus_part.trim();
    out.reconstruction_residual = multiply(out.unitary_part, out.plus_part).dist(gamma);
    out.reality_residual = reality_residual(out.unitary_part, spec);
    if (out.reconstruction_residual > opts.tol || out.reality_residual > opts.tol)
        return fail("factor residuals exceed tolerance");
    return out;
}

double birkhoff_round_trip_residual(const LaurentMatrix& gamma, const FactorOptions& opts) {
    const BirkhoffResult r = birkhoff(gamma, opts);
    return multiply(r.minus, r.plus).dist(gamma);
}

double iwasawa_round_trip_residual(const LaurentMatrix& gamma, const SymmetricSpaceSpec& spec,
                                   const FactorOptions& opts) {
    const IwasawaResult r = iwasawa(gamma, spec, opts);
    if (r.cell == CellFlag::OutsideCell)
        throw OutsideCell("loop lies outside the identity Iwasawa cell");
    return multiply(r.unitary_part, r.plus_part).dist(gamma);
}

std::vector<BirkhoffResult> birkhoff_batch(const std::vector<LaurentMatrix>& gammas,
                                           const FactorOptions& opts) {
    std::vector<BirkhoffResult> out;
    out.reserve(gammas.size());
    for (const auto& g : gammas) out.push_back(birkhoff(g, opts));
    return out;
}

std::vector<IwasawaResult> iwasawa_batch(const std::vector<LaurentMatrix>& gammas,
                                         const SymmetricSpaceSpec& spec,
                                         const FactorOptions& opts) {
    std::vector<IwasawaResult> out;
    out.reserve(gammas.size());
    for (const auto& g : gammas) out.push_back(iwasawa(g, spec, opts));
    return out;
}

} // namespace dpwlab
