#include "dpwlab/frames.hpp"

#include <algorithm>
#include <cmath>

namespace dpwlab {

FrameField build_extended_frame(const Potential& eta, const GridSpec& grid_spec,
                                const BuildOptions& opts) {
    eta.validate();
    FrameField field;
    field.spec = eta.spec;
    field.grid = grid_spec.build(eta.basepoint);
    const int count = field.grid.count();
    field.frames.assign(count, LaurentMatrix::identity(eta.spec.n));
    field.in_cell.assign(count, 1);
    field.tail.assign(count, 0.0);
    field.provenance = Provenance::FromPotential;

    IntegrationMode mode;
    if (opts.mode.has_value())
        mode = *opts.mode;
    else
        mode = (eta.is_polynomial() && eta.is_nilpotent_upper(opts.picard.block_sizes))
                   ? IntegrationMode::ExactNilpotent
                   : IntegrationMode::Numeric;

    for (int i = 0; i < count; ++i) {
        PicardResult pr;
        try {
            pr = picard_integrate(eta, field.grid.z[i], mode, opts.picard);
        } catch (const PoleOnPath&) {
            field.in_cell[i] = 0;
            continue;
        }
        field.tail[i] = pr.tail_norm;
        IwasawaResult iw;
        try {
            iw = iwasawa(pr.value, eta.spec, opts.factor);
        } catch (const NumericalError&) {
            field.in_cell[i] = 0;
            continue;
        }
        if (iw.cell == CellFlag::OutsideCell) {
            field.in_cell[i] = 0;
            continue;
        }
        field.frames[i] = iw.unitary_part;
    }
    if (field.grid.basepoint_index >= 0 && field.in_cell[field.grid.basepoint_index])
        normalize_at_basepoint(field);
    field.basepoint_normalized = true;
    return field;
}

void normalize_at_basepoint(FrameField& field) {
    const int bp = field.grid.basepoint_index;
    if (bp < 0) throw ValidationError("field has no basepoint sample to normalize at");
    if (!field.in_cell[bp]) throw ValidationError("basepoint sample is excluded");
    const LaurentMatrix g = inverse(field.frames[bp]);
    if (g.dist_identity() < 1e-14) {
        field.basepoint_normalized = true;
        return;
    }
    for (int i = 0; i < field.count(); ++i)
        if (field.in_cell[i]) field.frames[i] = multiply(g, field.frames[i]);
    field.basepoint_normalized = true;
}

namespace {

bool interior_ok(const FrameField& f, int r, int c, int margin) {
    for (int dr = -margin; dr <= margin; ++dr)
        for (int dc = -margin; dc <= margin; ++dc) {
            if (std::abs(dr) + std::abs(dc) > margin) continue;
            const int rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= f.grid.rows || cc < 0 || cc >= f.grid.cols) return false;
            if (!f.in_cell[f.grid.index(rr, cc)]) return false;
        }
    return true;
}

} // namespace

SampledPotential normalized_potential_from_frame(const FrameField& field,
                                                 const FactorOptions& opts) {
    if (!field.grid.is_grid())
        throw ValidationError("normalized potential recovery needs a rectangular grid");
    if (!field.basepoint_normalized)
        throw ValidationError("frames must be basepoint-normalized");
    const int rows = field.grid.rows, cols = field.grid.cols;
    const int n = field.spec.n;

    // Birkhoff minus factor per point; failures play the role of the
    // discrete bad set and are masked.
    std::vector<LaurentMatrix> minus(field.count(), LaurentMatrix::identity(n));
    std::vector<char> ok(field.count(), 0);
    for (int i = 0; i < field.count(); ++i) {
        if (!field.in_cell[i]) continue;
        try {
            minus[i] = birkhoff(field.frames[i], opts).minus;
            ok[i] = 1;
        } catch (const NotInBigCell&) {
            ok[i] = 0;
        }
    }

    SampledPotential out;
    out.grid = field.grid;
    out.coefficient.assign(field.count(), Mat::zero(n, n));
    out.valid.assign(field.count(), 0);
    const double hx = field.grid.step_x, hy = field.grid.step_y;
    for (int r = 1; r + 1 < rows; ++r)
        for (int c = 1; c + 1 < cols; ++c) {
            const int i = field.grid.index(r, c);
            const int ix0 = field.grid.index(r, c - 1), ix1 = field.grid.index(r, c + 1);
            const int iy0 = field.grid.index(r - 1, c), iy1 = field.grid.index(r + 1, c);
            if (!(ok[i] && ok[ix0] && ok[ix1] && ok[iy0] && ok[iy1])) continue;
            // complex derivative d/dz = (d/dx - i d/dy)/2, coefficient-wise
            LaurentMatrix dx = minus[ix1] - minus[ix0];
            dx *= cplx(1.0 / (2.0 * hx));
            LaurentMatrix dy = minus[iy1] - minus[iy0];
            dy *= cplx(1.0 / (2.0 * hy));
            dy *= cplx(0.0, -1.0);
            LaurentMatrix dz = dx + dy;
            dz *= cplx(0.5);
            LaurentMatrix eta_hat = multiply(inverse(minus[i]), dz);
            eta_hat.trim(1e-14);
            for (int d = eta_hat.lo(); d <= eta_hat.hi(); ++d)
                if (d != -1)
                    out.max_off_structure =
                        std::max(out.max_off_structure, eta_hat.coeff(d).frobenius_norm());
            const Mat coeff = eta_hat.coeff(-1);
            out.max_parity_residual =
                std::max(out.max_parity_residual, field.spec.p_residual(coeff));
            out.coefficient[i] = coeff;
            out.valid[i] = 1;
        }
    return out;
}

MaurerCartanReport maurer_cartan_residual(const FrameField& field,
                                          const std::vector<cplx>& lambdas) {
    if (!field.grid.is_grid())
        throw ValidationError("Maurer-Cartan residual needs a rectangular grid");
    MaurerCartanReport rep;
    rep.lambdas = lambdas;
    rep.coarse_grid_warning = std::max(field.grid.step_x, field.grid.step_y) > 0.1;
    const int rows = field.grid.rows, cols = field.grid.cols;
    const double hx = field.grid.step_x, hy = field.grid.step_y;

    // lambda = 1 slice and its h-parity split Maurer-Cartan components
    std::vector<Mat> f1(field.count());
    for (int i = 0; i < field.count(); ++i)
        if (field.in_cell[i]) f1[i] = field.frames[i].evaluate(1.0);

    struct Components {
        Mat ak, bk; // k-parts of alpha(dx), alpha(dy)
        Mat ap_hol, ap_anti; // A', B' with alpha_p = A' dz + B' dzbar
        bool ok = false;
    };
    std::vector<Components> comp(field.count());
    for (int r = 1; r + 1 < rows; ++r)
        for (int c = 1; c + 1 < cols; ++c) {
            const int i = field.grid.index(r, c);
            if (!interior_ok(field, r, c, 1)) continue;
            const Mat fi_inv = inverse(f1[i]);
            Mat ax = fi_inv * (f1[field.grid.index(r, c + 1)] - f1[field.grid.index(r, c - 1)]);
            ax *= cplx(1.0 / (2.0 * hx));
            Mat ay = fi_inv * (f1[field.grid.index(r + 1, c)] - f1[field.grid.index(r - 1, c)]);
            ay *= cplx(1.0 / (2.0 * hy));
            Components& cc = comp[i];
            cc.ak = field.spec.project_k(ax);
            cc.bk = field.spec.project_k(ay);
            const Mat axp = field.spec.project_p(ax);
            const Mat ayp = field.spec.project_p(ay);
            cc.ap_hol = (axp - ayp * cplx(0.0, 1.0)) * cplx(0.5);
            cc.ap_anti = (axp + ayp * cplx(0.0, 1.0)) * cplx(0.5);
            cc.ok = true;
        }

    auto alpha_x = [&](const Components& cc, cplx lam) {
        return cc.ap_hol * (cplx(1.0) / lam) + cc.ak + cc.ap_anti * lam;
    };
    auto alpha_y = [&](const Components& cc, cplx lam) {
        return cc.ap_hol * (cplx(0.0, 1.0) / lam) + cc.bk + cc.ap_anti * (cplx(0.0, -1.0) * lam);
    };

    rep.residual.assign(lambdas.size(), 0.0);
    rep.residual_core.assign(lambdas.size(), 0.0);
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        const cplx lam = lambdas[li];
        double worst = 0.0, worst_core = 0.0;
        for (int r = 2; r + 2 < rows; ++r)
            for (int c = 2; c + 2 < cols; ++c) {
                const int i = field.grid.index(r, c);
                const int ix0 = field.grid.index(r, c - 1), ix1 = field.grid.index(r, c + 1);
                const int iy0 = field.grid.index(r - 1, c), iy1 = field.grid.index(r + 1, c);
                if (!(comp[i].ok && comp[ix0].ok && comp[ix1].ok && comp[iy0].ok &&
                      comp[iy1].ok))
                    continue;
                const Mat a = alpha_x(comp[i], lam);
                const Mat b = alpha_y(comp[i], lam);
                Mat dxb = alpha_y(comp[ix1], lam) - alpha_y(comp[ix0], lam);
                dxb *= cplx(1.0 / (2.0 * hx));
                Mat dya = alpha_x(comp[iy1], lam) - alpha_x(comp[iy0], lam);
                dya *= cplx(1.0 / (2.0 * hy));
                const Mat curv = dxb - dya + a * b - b * a;
                const double nrm = curv.frobenius_norm();
                worst = std::max(worst, nrm);
                if (in_core_region(field.grid, i)) worst_core = std::max(worst_core, nrm);
            }
        rep.residual[li] = worst;
        rep.residual_core[li] = worst_core;
    }
    return rep;
}

bool in_core_region(const GridInfo& grid, int index) {
    if (!grid.is_grid()) return true;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const cplx& z : grid.z) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double hw = 0.25 * (xmax - xmin), hh = 0.25 * (ymax - ymin);
    const cplx z = grid.z[index];
    return std::abs(z.real() - cx) <= hw + 1e-12 && std::abs(z.imag() - cy) <= hh + 1e-12;
}

double frame_field_distance(const FrameField& a, const FrameField& b) {
    if (a.count() != b.count()) throw ShapeError("frame field sample counts differ");
    double s = 0.0;
    for (int i = 0; i < a.count(); ++i) {
        if (!a.in_cell[i] || !b.in_cell[i]) continue;
        s = std::max(s, a.frames[i].dist(b.frames[i]));
    }
    return s;
}

} // namespace dpwlab
