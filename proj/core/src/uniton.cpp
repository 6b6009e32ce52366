#include "dpwlab/uniton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dpwlab/verify.hpp"

namespace dpwlab {

namespace {

LaurentMatrix embed_one(const LaurentMatrix& frame, const Mat& h) {
    return multiply(multiply(frame, LaurentMatrix::constant(h)), inverse(frame));
}

std::string point_str(cplx z) {
    std::ostringstream os;
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

} // namespace

ModifiedHarmonicMap cartan_embed(const FrameField& frames, double tol) {
    if (!frames.basepoint_normalized)
        throw ValidationError("cartan_embed requires basepoint-normalized frames");
    ModifiedHarmonicMap out;
    out.spec = frames.spec;
    out.grid = frames.grid;
    out.samples.assign(frames.count(), LaurentMatrix::identity(frames.spec.n));
    out.valid.assign(frames.count(), 0);
    out.tail = frames.tail;
    const Mat h = frames.spec.h_matrix();
    for (int i = 0; i < frames.count(); ++i) {
        if (!frames.in_cell[i]) continue;
        LaurentMatrix fh = embed_one(frames.frames[i], h);
        const double inv_res = multiply(fh, fh).dist_identity();
        if (inv_res > tol)
            throw NumericalError("Cartan-embedded sample at z = " + point_str(frames.grid.z[i]) +
                                 " fails the involution invariant, residual " +
                                 std::to_string(inv_res));
        out.samples[i] = std::move(fh);
        out.valid[i] = 1;
    }
    const int bp = frames.grid.basepoint_index;
    if (bp >= 0 && out.valid[bp]) {
        const double base_res = out.samples[bp].dist(LaurentMatrix::constant(h));
        if (base_res > tol)
            throw NumericalError("Cartan embedding does not equal h at the basepoint, residual " +
                                 std::to_string(base_res));
    }
    return out;
}

ExtendedSolutionField extended_solution(const FrameField& frames) {
    if (!frames.basepoint_normalized)
        throw ValidationError("extended_solution requires basepoint-normalized frames");
    ExtendedSolutionField out;
    out.spec = frames.spec;
    out.grid = frames.grid;
    out.samples.assign(frames.count(), LaurentMatrix::identity(frames.spec.n));
    out.valid.assign(frames.count(), 0);
    out.tail = frames.tail;
    for (int i = 0; i < frames.count(); ++i) {
        if (!frames.in_cell[i]) continue;
        const Mat f1 = frames.frames[i].evaluate(1.0);
        LaurentMatrix phi = multiply(frames.frames[i], LaurentMatrix::constant(inverse(f1)));
        phi.trim();
        out.samples[i] = std::move(phi);
        out.valid[i] = 1;
    }
    return out;
}

UnitonCertificate uniton_number(const ExtendedSolutionField& phi, double tail_tol) {
    UnitonCertificate cert;
    cert.note = "r(Phi); upper bound for the minimal uniton number r(F-hat), the minimization "
                "over based algebraic loops is not performed";
    for (int i = 0; i < phi.grid.count(); ++i) {
        if (!phi.valid[i]) continue;
        if (i < int(phi.tail.size()) && phi.tail[i] > tail_tol)
            throw NotAlgebraic("extended solution sample at z = " + point_str(phi.grid.z[i]) +
                               " is not a Laurent polynomial (truncation tail " +
                               std::to_string(phi.tail[i]) + ")");
        const int k = adjoint_degree(phi.samples[i]);
        if (k > cert.number) {
            cert.number = k;
            cert.attaining_index = i;
            cert.attaining_z = phi.grid.z[i];
        }
    }
    return cert;
}

ClassificationVerdict classify_uniton_type(const FrameField& frames,
                                           const std::vector<MonodromyRecord>& monodromy,
                                           double algebraic_tol, double monodromy_tol) {
    ClassificationVerdict v;
    v.algebraic = algebraicity_certificate(frames, algebraic_tol).is_laurent;
    v.totally_symmetric = true;
    for (const auto& rec : monodromy)
        v.totally_symmetric = v.totally_symmetric && rec.max_deviation < monodromy_tol;
    v.finite_uniton_type = v.algebraic && v.totally_symmetric;
    return v;
}

FrameField dress(const LaurentMatrix& h_plus, const FrameField& frames,
                 const FactorOptions& opts) {
    LaurentMatrix hp = h_plus;
    hp.trim();
    if (hp.lo() < 0)
        throw ValidationError("dressing loop must lie in Lambda+ (no negative powers)");
    require_unimodular(hp, "dress");
    if (twist_residual(hp, frames.spec) > opts.tol)
        throw ValidationError("dressing loop is not sigma-twisted");
    FrameField out;
    out.spec = frames.spec;
    out.grid = frames.grid;
    out.frames.assign(frames.count(), LaurentMatrix::identity(frames.spec.n));
    out.in_cell.assign(frames.count(), 0);
    out.tail = frames.tail;
    out.provenance = Provenance::Dressed;
    for (int i = 0; i < frames.count(); ++i) {
        if (!frames.in_cell[i]) continue;
        const IwasawaResult iw = iwasawa(multiply(hp, frames.frames[i]), frames.spec, opts);
        if (iw.cell == CellFlag::OutsideCell) continue;
        out.frames[i] = iw.unitary_part;
        out.in_cell[i] = 1;
    }
    if (out.grid.basepoint_index >= 0 && out.in_cell[out.grid.basepoint_index])
        normalize_at_basepoint(out);
    return out;
}

FrameField dualize_to(const FrameField& frames, const SymmetricSpaceSpec& target,
                      const FactorOptions& opts) {
    if (target.n != frames.spec.n || target.h != frames.spec.h)
        throw ValidationError("dualize target must share n and the twist diagonal h");
    FrameField out;
    out.spec = target;
    out.grid = frames.grid;
    out.frames.assign(frames.count(), LaurentMatrix::identity(frames.spec.n));
    out.in_cell.assign(frames.count(), 0);
    out.tail = frames.tail;
    out.provenance = Provenance::Dualized;
    for (int i = 0; i < frames.count(); ++i) {
        if (!frames.in_cell[i]) continue;
        const IwasawaResult iw = iwasawa(frames.frames[i], target, opts);
        if (iw.cell == CellFlag::OutsideCell) continue;
        out.frames[i] = iw.unitary_part;
        out.in_cell[i] = 1;
    }
    if (out.grid.basepoint_index >= 0 && out.in_cell[out.grid.basepoint_index])
        normalize_at_basepoint(out);
    return out;
}

FrameField dualize(const FrameField& frames, const FactorOptions& opts) {
    if (frames.spec.form != RealForm::Indefinite)
        throw ValidationError("dualize expects an indefinite-form frame field");
    return dualize_to(frames, frames.spec.compact_dual(), opts);
}

MonodromyRecord monodromy(const Potential& eta, const std::vector<cplx>& polygon,
                          const std::vector<cplx>& lambdas, const std::string& label,
                          const PicardOptions& opts) {
    if (polygon.size() < 3) throw ValidationError("monodromy path needs at least 3 vertices");
    if (std::abs(polygon.front() - polygon.back()) > 1e-12)
        throw ValidationError("monodromy path must be closed");
    MonodromyRecord rec;
    rec.path_label = label.empty() ? "generator" : label;
    rec.lambdas = lambdas;

    bool coefficient_ok = false;
    LaurentMatrix chi_loop;
    try {
        const PicardResult pr = transport_along_path(eta, polygon, opts);
        if (pr.tail_norm < opts.tail_tol) {
            chi_loop = pr.value;
            coefficient_ok = true;
        }
    } catch (const PoleOnPath&) {
        throw;
    }

    const Mat jm = eta.spec.j_matrix();
    for (const cplx& lam : lambdas) {
        Mat chi = coefficient_ok ? chi_loop.evaluate(lam)
                                 : transport_at_lambda(eta, polygon, lam, opts);
        rec.max_deviation = std::max(rec.max_deviation, chi.dist_identity());
        rec.real_form_residual =
            std::max(rec.real_form_residual, (chi.adjoint() * jm * chi - jm).frobenius_norm());
        rec.chi.push_back(std::move(chi));
    }
    return rec;
}

double monodromy_deviation_from_frames(const ModifiedHarmonicMap& embedded,
                                       const std::vector<std::pair<int, int>>& identified_pairs,
                                       const std::vector<cplx>& lambdas) {
    double s = 0.0;
    for (const auto& [a, b] : identified_pairs) {
        if (!embedded.valid[a] || !embedded.valid[b]) continue;
        for (const cplx& lam : lambdas)
            s = std::max(s, (embedded.samples[a].evaluate(lam) - embedded.samples[b].evaluate(lam))
                                .frobenius_norm());
    }
    return s;
}

MonodromyRelationReport extended_solution_monodromy_relation(
    const Potential& eta, const std::vector<cplx>& polygon,
    const std::vector<cplx>& sample_points, const std::vector<cplx>& lambdas,
    const BuildOptions& opts) {
    if (polygon.size() < 3 || std::abs(polygon.front() - polygon.back()) > 1e-12)
        throw ValidationError("monodromy relation needs a closed generator path");
    if (std::abs(polygon.front() - eta.basepoint) > 1e-12)
        throw ValidationError("generator path must be based at the potential basepoint");
    std::vector<cplx> points;
    points.push_back(eta.basepoint);
    for (const cplx& z : sample_points)
        if (std::abs(z - eta.basepoint) > 1e-12) points.push_back(z);

    const LaurentMatrix chi = transport_along_path(eta, polygon, opts.picard).value;
    const Mat chi_one_inv = inverse(chi.evaluate(1.0));

    MonodromyRelationReport rep;
    for (const cplx& lam : lambdas)
        rep.monodromy_deviation =
            std::max(rep.monodromy_deviation, chi.evaluate(lam).dist_identity());

    for (const cplx& z : points) {
        const LaurentMatrix c1 = transport_along_path(eta, {eta.basepoint, z}, opts.picard).value;
        // continuation around the generator, then out to z, as one transport
        std::vector<cplx> continued = polygon;
        continued.push_back(z);
        const LaurentMatrix c2 = transport_along_path(eta, continued, opts.picard).value;

        const LaurentMatrix phi1 =
            multiply(c1, LaurentMatrix::constant(inverse(c1.evaluate(1.0))));
        const LaurentMatrix phi2 =
            multiply(c2, LaurentMatrix::constant(inverse(c2.evaluate(1.0))));
        for (const cplx& lam : lambdas) {
            const Mat lhs = phi2.evaluate(lam);
            const Mat rhs = chi.evaluate(lam) * phi1.evaluate(lam) * chi_one_inv;
            rep.relation_residual =
                std::max(rep.relation_residual, (lhs - rhs).frobenius_norm());
        }
    }
    return rep;
}

double a_transport_residual(const Potential& eta, cplx target_z,
                            const std::vector<cplx>& lambdas, const BuildOptions& opts) {
    const Mat h = eta.spec.h_matrix();
    const Mat h_inv = inverse(h);

    IntegrationMode mode;
    if (opts.mode.has_value())
        mode = *opts.mode;
    else
        mode = (eta.is_polynomial() && eta.is_nilpotent_upper(opts.picard.block_sizes))
                   ? IntegrationMode::ExactNilpotent
                   : IntegrationMode::Numeric;

    auto frame_at = [&](cplx z) {
        const PicardResult pr = picard_integrate(eta, z, mode, opts.picard);
        const IwasawaResult iw = iwasawa(pr.value, eta.spec, opts.factor);
        if (iw.cell == CellFlag::OutsideCell)
            throw OutsideCell("transport segment leaves the identity cell at z = " + point_str(z));
        return iw.unitary_part;
    };

    const cplx delta = target_z - eta.basepoint;
    double worst = 0.0;
    for (const cplx& lam : lambdas) {
        auto fhat = [&](double t) {
            const LaurentMatrix f = frame_at(eta.basepoint + t * delta);
            const Mat fm = f.evaluate(lam);
            return fm * h * inverse(fm);
        };
        const double eps = 1e-4;
        auto connection = [&](double t) {
            const Mat fw = fhat(t + eps);
            const Mat bw = fhat(t - eps);
            Mat d = fw - bw;
            d *= cplx(1.0 / (2.0 * eps));
            return inverse(fhat(t)) * d; // F^-1 dF/dt = 2 A(dz/dt)
        };
        const int steps = 64;
        const double dt = 1.0 / steps;
        Mat psi = Mat::identity(eta.spec.n);
        for (int s = 0; s < steps; ++s) {
            const double t0 = s * dt;
            const Mat a0 = connection(t0);
            const Mat am = connection(t0 + dt * 0.5);
            const Mat a1 = connection(t0 + dt);
            const Mat k1 = psi * a0;
            const Mat k2 = (psi + k1 * cplx(dt * 0.5)) * am;
            const Mat k3 = (psi + k2 * cplx(dt * 0.5)) * am;
            const Mat k4 = (psi + k3 * cplx(dt)) * a1;
            psi += (k1 + k2 * cplx(2.0) + k3 * cplx(2.0) + k4) * cplx(dt / 6.0);
        }
        const Mat target = fhat(1.0);
        const Mat a_value = psi * inverse(target); // should equal h^-1
        worst = std::max(worst, (a_value - h_inv).frobenius_norm());
    }
    return worst;
}

PairFrameReport pair_frame_residual(const ExtendedSolutionField& phi,
                                    const ModifiedHarmonicMap& embedded,
                                    const std::vector<cplx>& lambdas) {
    PairFrameReport rep;
    const Mat h_inv = inverse(embedded.spec.h_matrix());
    for (int i = 0; i < phi.grid.count(); ++i) {
        if (!phi.valid[i] || !embedded.valid[i]) continue;
        rep.value_residual =
            std::max(rep.value_residual, phi.samples[i].evaluate(1.0).dist_identity());
        const Mat based = h_inv * embedded.samples[i].evaluate(1.0);
        rep.value_residual = std::max(
            rep.value_residual, (phi.samples[i].evaluate(-1.0) - based).frobenius_norm());
    }
    for (const cplx& lam : lambdas) {
        rep.component_mc_residual = std::max(
            rep.component_mc_residual, extended_solution_residual_at(phi, embedded, lam));
        rep.component_mc_residual = std::max(
            rep.component_mc_residual, extended_solution_residual_at(phi, embedded, -lam));
    }
    return rep;
}

ExtendedSolutionField translate_solution(const LaurentMatrix& gamma,
                                         const ExtendedSolutionField& phi) {
    ExtendedSolutionField out = phi;
    for (int i = 0; i < out.grid.count(); ++i)
        if (out.valid[i]) out.samples[i] = multiply(gamma, phi.samples[i]);
    return out;
}

} // namespace dpwlab
