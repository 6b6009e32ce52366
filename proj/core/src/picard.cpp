#include "dpwlab/picard.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dpwlab/rational.hpp"

namespace dpwlab {

namespace {

// ----- exact nilpotent mode, double coefficients -------------------------

struct PolyMatrix {
    int n = 0;
    std::vector<Poly> entries;

    explicit PolyMatrix(int n_ = 0) : n(n_), entries(std::size_t(n_) * n_) {}
    static PolyMatrix identity(int n_) {
        PolyMatrix m(n_);
        for (int i = 0; i < n_; ++i) m.at(i, i) = Poly(cplx(1.0));
        return m;
    }
    Poly& at(int i, int j) { return entries[std::size_t(i) * n + j]; }
    const Poly& at(int i, int j) const { return entries[std::size_t(i) * n + j]; }

    bool is_negligible(double tol) const {
        for (const auto& p : entries)
            for (const auto& c : p.c)
                if (std::abs(c) > tol) return false;
        return true;
    }
    PolyMatrix operator+(const PolyMatrix& o) const {
        PolyMatrix r(n);
        for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] + o.entries[i];
        return r;
    }
    PolyMatrix operator*(const PolyMatrix& o) const {
        PolyMatrix r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (at(i, k).is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    if (o.at(k, j).is_zero()) continue;
                    r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
                }
            }
        return r;
    }
    PolyMatrix antiderivative() const {
        PolyMatrix r(n);
        for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i].antiderivative();
        return r;
    }
    Mat eval(cplx z) const {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = at(i, j).eval(z);
        return m;
    }
};

// lambda-graded container of matrix polynomials
template <class M>
using Graded = std::map<int, M>;

// converts the potential to polynomial matrix coefficients (double path)
Graded<PolyMatrix> potential_poly_coeffs(const Potential& eta) {
    Graded<PolyMatrix> out;
    for (const auto& t : eta.terms) {
        PolyMatrix m(eta.spec.n);
        for (int i = 0; i < eta.spec.n; ++i)
            for (int j = 0; j < eta.spec.n; ++j) {
                const RationalFn& f = t.matrix.at(i, j);
                Poly den = f.den;
                den.trim(0.0);
                if (den.degree() > 0)
                    throw ModeError("exactNilpotent mode requires polynomial coefficients");
                const cplx d = den.c.empty() ? cplx(1.0) : den.c[0];
                m.at(i, j) = f.num.scaled(cplx(1.0) / d);
            }
        auto it = out.find(t.power);
        if (it == out.end())
            out.emplace(t.power, std::move(m));
        else
            it->second = it->second + m;
    }
    return out;
}

Graded<RatPolyMatrix> potential_rational_coeffs(const Potential& eta) {
    Graded<RatPolyMatrix> out;
    for (const auto& t : eta.terms) {
        RatPolyMatrix m(eta.spec.n);
        for (int i = 0; i < eta.spec.n; ++i)
            for (int j = 0; j < eta.spec.n; ++j) {
                const RationalFn& f = t.matrix.at(i, j);
                Poly den = f.den;
                den.trim(0.0);
                if (den.degree() > 0)
                    throw ModeError("exactNilpotent mode requires polynomial coefficients");
                const cplx d = den.c.empty() ? cplx(1.0) : den.c[0];
                const CRational dinv_den(d);
                // 1/d for complex rational: conj(d) / |d|^2
                const Rational mag = dinv_den.re * dinv_den.re + dinv_den.im * dinv_den.im;
                if (mag == 0) throw ModeError("zero constant denominator");
                const CRational dinv(dinv_den.re / mag, -dinv_den.im / mag);
                RatPoly p;
                p.c.reserve(f.num.c.size());
                for (const auto& c : f.num.c) p.c.push_back(CRational(c) * dinv);
                p.trim();
                m.at(i, j) = p;
            }
        auto it = out.find(t.power);
        if (it == out.end())
            out.emplace(t.power, std::move(m));
        else
            it->second = it->second + m;
    }
    return out;
}

Mat eval_of(const PolyMatrix& m, cplx z) { return m.eval(z); }
Mat eval_of(const RatPolyMatrix& m, cplx z) { return m.eval_double(z); }

bool is_structurally_zero(const PolyMatrix& m) { return m.is_negligible(0.0); }
bool is_structurally_zero(const RatPolyMatrix& m) { return m.is_zero(); }

PolyMatrix difference(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix r(a.n);
    for (std::size_t i = 0; i < a.entries.size(); ++i) r.entries[i] = a.entries[i] - b.entries[i];
    return r;
}

RatPolyMatrix difference(const RatPolyMatrix& a, const RatPolyMatrix& b) {
    RatPolyMatrix r(a.n);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        RatPoly neg = b.entries[i];
        for (auto& c : neg.c) c = CRational(Rational(0), Rational(0)) - c;
        r.entries[i] = a.entries[i] + neg;
    }
    return r;
}

// One Picard pass: I + int_{z0}^{z} (C * eta). Integration constant fixed by
// value 0 at z0: F(z) - F(z0) done via shifted antiderivative evaluation.
template <class M, class Shift>
Graded<M> picard_step(const Graded<M>& c, const Graded<M>& eta, const Shift& anchored) {
    Graded<M> next;
    for (const auto& [dc, mc] : c)
        for (const auto& [de, me] : eta) {
            M prod = mc * me;
            auto it = next.find(dc + de);
            if (it == next.end())
                next.emplace(dc + de, std::move(prod));
            else
                it->second = it->second + prod;
        }
    Graded<M> out;
    for (auto& [deg, m] : next) out.emplace(deg, anchored(m));
    return out;
}

template <class M>
LaurentMatrix graded_to_laurent(const Graded<M>& g, int n, cplx z) {
    int lo = 0, hi = 0;
    for (const auto& [deg, m] : g) {
        lo = std::min(lo, deg);
        hi = std::max(hi, deg);
    }
    LaurentMatrix out(n, lo, hi);
    for (const auto& [deg, m] : g) out.coeff_mut(deg) += eval_of(m, z);
    out.trim();
    return out;
}

template <class M, class AntiD>
PicardResult run_exact_picard(const Potential&, const Graded<M>& eta, [[maybe_unused]] int n, cplx,
                              cplx target, const AntiD& anchored, int max_steps) {
    Graded<M> c;
    c.emplace(0, M::identity(n));
    PicardResult res;
    for (int step = 1; step <= max_steps; ++step) {
        Graded<M> incr = picard_step(c, eta, anchored);
        Graded<M> next;
        next.emplace(0, M::identity(n));
        for (const auto& [deg, m] : incr) {
            auto it = next.find(deg);
            if (it == next.end())
                next.emplace(deg, m);
            else
                it->second = it->second + m;
        }
        // fixpoint test: next == c up to exact/structural zero
        bool same = true;
        for (const auto& [deg, m] : next) {
            auto it = c.find(deg);
            if (it == c.end()) {
                if (!is_structurally_zero(m)) same = false;
            } else if (!is_structurally_zero(difference(m, it->second))) {
                same = false;
            }
            if (!same) break;
        }
        if (same) {
            res.steps = step - 1;
            res.value = graded_to_laurent(c, n, target);
            return res;
        }
        c = std::move(next);
        res.steps = step;
    }
    res.value = graded_to_laurent(c, n, target);
    return res;
}

// ----- numeric windowed mode ---------------------------------------------

struct Window {
    int lo = 0, hi = 0;
    int n = 0;
    std::vector<Mat> c; // coefficients lo..hi

    Mat& at(int j) { return c[std::size_t(j - lo)]; }
    const Mat& at(int j) const { return c[std::size_t(j - lo)]; }
};

Window window_identity(int n, int lo, int hi) {
    Window w;
    w.lo = lo;
    w.hi = hi;
    w.n = n;
    w.c.assign(std::size_t(hi - lo + 1), Mat::zero(n, n));
    w.at(0) = Mat::identity(n);
    return w;
}

// dC_k = sum_j C_{k-j} A_j(z) dz, truncated to the window
Window window_rhs(const Window& c, const std::vector<std::pair<int, Mat>>& a) {
    Window d;
    d.lo = c.lo;
    d.hi = c.hi;
    d.n = c.n;
    d.c.assign(c.c.size(), Mat::zero(c.n, c.n));
    for (int k = c.lo; k <= c.hi; ++k)
        for (const auto& [j, aj] : a) {
            const int src = k - j;
            if (src < c.lo || src > c.hi) continue;
            d.at(k) += c.at(src) * aj;
        }
    return d;
}

Window axpy(const Window& x, const Window& y, cplx s) {
    Window r = x;
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        Mat t = y.c[i];
        t *= s;
        r.c[i] += t;
    }
    return r;
}

double window_dist(const Window& a, const Window& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        s = std::max(s, (a.c[i] - b.c[i]).frobenius_norm());
    return s;
}

std::vector<std::pair<int, Mat>> eval_potential_coeffs(const Potential& eta, cplx z,
                                                       double pole_tol) {
    std::vector<std::pair<int, Mat>> out;
    for (const auto& t : eta.terms) {
        if (eta.min_denominator_magnitude(z) < pole_tol)
            throw PoleOnPath("integration path passes through a pole near z = (" +
                             std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
        bool merged = false;
        Mat v = t.matrix.eval(z, pole_tol);
        for (auto& [p, m] : out)
            if (p == t.power) {
                m += v;
                merged = true;
                break;
            }
        if (!merged) out.emplace_back(t.power, std::move(v));
    }
    return out;
}

Window rk4_segment(const Potential& eta, Window y, cplx z0, cplx z1, int steps, double pole_tol) {
    const cplx dz = (z1 - z0) / double(steps);
    for (int s = 0; s < steps; ++s) {
        const cplx za = z0 + dz * double(s);
        const cplx zm = za + dz * 0.5;
        const cplx zb = za + dz;
        const auto aa = eval_potential_coeffs(eta, za, pole_tol);
        const auto am = eval_potential_coeffs(eta, zm, pole_tol);
        const auto ab = eval_potential_coeffs(eta, zb, pole_tol);
        const Window k1 = window_rhs(y, aa);
        const Window k2 = window_rhs(axpy(y, k1, dz * 0.5), am);
        const Window k3 = window_rhs(axpy(y, k2, dz * 0.5), am);
        const Window k4 = window_rhs(axpy(y, k3, dz), ab);
        for (std::size_t i = 0; i < y.c.size(); ++i) {
            Mat incr = k1.c[i];
            Mat t2 = k2.c[i];
            t2 *= 2.0;
            Mat t3 = k3.c[i];
            t3 *= 2.0;
            incr += t2;
            incr += t3;
            incr += k4.c[i];
            incr *= dz / 6.0;
            y.c[i] += incr;
        }
    }
    return y;
}

Window integrate_window(const Potential& eta, const std::vector<cplx>& vertices, int lo, int hi,
                        const PicardOptions& opts) {
    Window y = window_identity(eta.spec.n, lo, hi);
    for (std::size_t seg = 0; seg + 1 < vertices.size(); ++seg) {
        const cplx a = vertices[seg], b = vertices[seg + 1];
        const double len = std::abs(b - a);
        if (len == 0.0) continue;
        int steps = std::max(16, int(len * 64));
        Window coarse = rk4_segment(eta, y, a, b, steps, opts.pole_tol);
        for (;;) {
            Window fine = rk4_segment(eta, y, a, b, steps * 2, opts.pole_tol);
            const double err = window_dist(coarse, fine);
            if (err < opts.ode_tol || steps > (1 << 17)) {
                y = std::move(fine);
                break;
            }
            coarse = std::move(fine);
            steps *= 2;
        }
    }
    return y;
}

double boundary_tail(const Window& w, int lo_used, int hi_used) {
    double s = 0.0;
    if (w.lo < 0) s = std::max(s, w.at(w.lo).frobenius_norm());
    if (w.hi > 0) s = std::max(s, w.at(w.hi).frobenius_norm());
    (void)lo_used;
    (void)hi_used;
    return s;
}

PicardResult numeric_transport(const Potential& eta, const std::vector<cplx>& vertices,
                               const PicardOptions& opts) {
    const int span_lo = std::min(eta.min_power(), -1);
    const int span_hi = std::max(eta.max_power(), 1);
    int lo = span_lo, hi = span_hi;
    for (;;) {
        Window w = integrate_window(eta, vertices, lo, hi, opts);
        const double tail = boundary_tail(w, lo, hi);
        if (tail < opts.tail_tol || (hi - lo) >= 2 * opts.max_window) {
            PicardResult res;
            res.tail_norm = tail;
            LaurentMatrix out(eta.spec.n, lo, hi);
            for (int j = lo; j <= hi; ++j) out.set_coeff(j, w.at(j));
            out.trim();
            res.value = out;
            return res;
        }
        lo += span_lo;
        hi += span_hi;
    }
}

} // namespace

PicardResult picard_integrate(const Potential& eta, cplx target_z, IntegrationMode mode,
                              const PicardOptions& opts) {
    if (mode == IntegrationMode::Numeric)
        return numeric_transport(eta, {eta.basepoint, target_z}, opts);

    if (!eta.is_polynomial())
        throw ModeError("exactNilpotent mode requires polynomial coefficients");
    if (!eta.is_nilpotent_upper(opts.block_sizes))
        throw ModeError("potential values violate the strictly-upper nilpotency pattern");

    const int n = eta.spec.n;
    const cplx z0 = eta.basepoint;
    // Plenty: words of length >= n in a strictly-upper pattern vanish.
    const int max_steps = n + 2;

    if (opts.rational) {
        const auto coeffs = potential_rational_coeffs(eta);
        const CRational z0r{cplx(z0)};
        auto anchored = [&](const RatPolyMatrix& m) {
            RatPolyMatrix f = m.antiderivative();
            // subtract F(z0) to anchor the integral at the basepoint
            RatPolyMatrix shift(f.n);
            for (int i = 0; i < f.n; ++i)
                for (int j = 0; j < f.n; ++j) {
                    const CRational v = f.at(i, j).eval(z0r);
                    if (!v.is_zero()) {
                        RatPoly neg;
                        neg.c = {CRational(Rational(0) - v.re, Rational(0) - v.im)};
                        shift.at(i, j) = neg;
                    }
                }
            return f + shift;
        };
        return run_exact_picard(eta, coeffs, n, z0, target_z, anchored, max_steps);
    }

    const auto coeffs = potential_poly_coeffs(eta);
    auto anchored = [&](const PolyMatrix& m) {
        PolyMatrix f = m.antiderivative();
        PolyMatrix shift(f.n);
        for (int i = 0; i < f.n; ++i)
            for (int j = 0; j < f.n; ++j) {
                const cplx v = f.at(i, j).eval(z0);
                if (v != cplx(0.0)) shift.at(i, j) = Poly(-v);
            }
        return f + shift;
    };
    return run_exact_picard(eta, coeffs, n, z0, target_z, anchored, max_steps);
}

PicardResult transport_along_path(const Potential& eta, const std::vector<cplx>& vertices,
                                  const PicardOptions& opts) {
    if (vertices.size() < 2) throw ValidationError("transport path needs at least two vertices");
    return numeric_transport(eta, vertices, opts);
}

Mat transport_at_lambda(const Potential& eta, const std::vector<cplx>& vertices, cplx lambda,
                        const PicardOptions& opts) {
    if (vertices.size() < 2) throw ValidationError("transport path needs at least two vertices");
    Mat y = Mat::identity(eta.spec.n);
    auto rhs = [&](cplx z) { return eta.eval(z, opts.pole_tol).evaluate(lambda); };
    for (std::size_t seg = 0; seg + 1 < vertices.size(); ++seg)
        y = integrate_matrix_ode(rhs, vertices[seg], vertices[seg + 1], y, opts.ode_tol);
    return y;
}

Mat integrate_matrix_ode(const std::function<Mat(cplx)>& rhs, cplx z0, cplx z1, const Mat& y0,
                         double tol) {
    const double len = std::abs(z1 - z0);
    if (len == 0.0) return y0;
    int steps = std::max(16, int(len * 64));
    auto run = [&](int nsteps) {
        Mat y = y0;
        const cplx dz = (z1 - z0) / double(nsteps);
        for (int s = 0; s < nsteps; ++s) {
            const cplx za = z0 + dz * double(s);
            const cplx zm = za + dz * 0.5;
            const cplx zb = za + dz;
            const Mat am = rhs(zm);
            const Mat k1 = y * rhs(za);
            const Mat k2 = (y + k1 * (dz * 0.5)) * am;
            const Mat k3 = (y + k2 * (dz * 0.5)) * am;
            const Mat k4 = (y + k3 * dz) * rhs(zb);
            y += (k1 + k2 * cplx(2.0) + k3 * cplx(2.0) + k4) * (dz / 6.0);
        }
        return y;
    };
    Mat coarse = run(steps);
    for (;;) {
        Mat fine = run(steps * 2);
        if ((coarse - fine).frobenius_norm() < tol || steps > (1 << 17)) return fine;
        coarse = fine;
        steps *= 2;
    }
}

} // namespace dpwlab
