#pragma once

#include <random>
#include <vector>

#include "dpwlab/frames.hpp"
#include "dpwlab/potential.hpp"
#include "dpwlab/random_loops.hpp"

namespace testsupport {

using namespace dpwlab;

inline SymmetricSpaceSpec su2_spec() { return SymmetricSpaceSpec::su(2, {1.0, -1.0}); }
inline SymmetricSpaceSpec su11_spec() { return SymmetricSpaceSpec::su_pq(1, 1, {1.0, -1.0}); }

inline SymmetricSpaceSpec alternating_spec(int n) {
    std::vector<double> h;
    for (int i = 0; i < n; ++i) h.push_back(i % 2 == 0 ? 1.0 : -1.0);
    return SymmetricSpaceSpec::su(n, h);
}

// eta = lambda^-1 E12 dz on the chosen real form
inline Potential cp1_potential(RealForm form = RealForm::Compact) {
    Potential eta;
    eta.spec = form == RealForm::Compact ? su2_spec() : su11_spec();
    PotentialTerm t;
    t.power = -1;
    t.matrix = RationalMatrix(2);
    t.matrix.at(0, 1) = RationalFn::constant(1.0);
    eta.terms.push_back(t);
    return eta;
}

// eta = lambda^-1 z^-1 E12 dz on the punctured plane
inline Potential log_pole_potential() {
    Potential eta;
    eta.spec = su2_spec();
    eta.basepoint = cplx(1.0, 0.0);
    PotentialTerm t;
    t.power = -1;
    t.matrix = RationalMatrix(2);
    t.matrix.at(0, 1) = RationalFn(Poly(cplx(1.0)), Poly(std::vector<cplx>{cplx(0.0), cplx(1.0)}));
    eta.terms.push_back(t);
    return eta;
}

// closed-form CP^1 extended frame (1/sqrt(1+|z|^2)) [[1, z/lambda], [-lambda zbar, 1]]
inline LaurentMatrix cp1_closed_frame(cplx z) {
    const double s = 1.0 / std::sqrt(1.0 + std::norm(z));
    LaurentMatrix f(2, -1, 1);
    Mat c0(2, 2);
    c0(0, 0) = s;
    c0(1, 1) = s;
    f.set_coeff(0, c0);
    Mat cm(2, 2);
    cm(0, 1) = s * z;
    f.set_coeff(-1, cm);
    Mat cp(2, 2);
    cp(1, 0) = -s * std::conj(z);
    f.set_coeff(1, cp);
    return f;
}

// Horner-scheme evaluation oracle, independent of LaurentMatrix::evaluate
inline Mat horner_evaluate(const LaurentMatrix& a, cplx lambda) {
    const int n = a.size();
    Mat acc(n, n);
    for (int j = a.hi(); j >= a.lo(); --j) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) acc(r, c) = acc(r, c) * lambda + a.coeff(j)(r, c);
    }
    cplx scale = 1.0;
    for (int k = 0; k < -a.lo(); ++k) scale /= lambda;
    if (a.lo() > 0)
        for (int k = 0; k < a.lo(); ++k) scale *= lambda;
    Mat out = acc;
    out *= scale;
    return out;
}

// DFT-based adjoint-degree oracle: samples Ad(gamma(lambda)) on the circle
// and reads off the Fourier support.
inline int adjoint_degree_dft_oracle(const LaurentMatrix& gamma, double tol = 1e-8) {
    const int n = gamma.size();
    const int span = (gamma.hi() - gamma.lo()) * 2 + 2;
    const int m = 4 * span + 8; // enough samples for exact trigonometric interpolation
    std::vector<Mat> basis;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Mat b(n, n);
            b(i, j) = 1.0;
            basis.push_back(b);
        }
    for (int i = 0; i + 1 < n; ++i) {
        Mat b(n, n);
        b(i, i) = 1.0;
        b(n - 1, n - 1) = -1.0;
        basis.push_back(b);
    }
    int k = 0;
    for (const Mat& b : basis) {
        std::vector<Mat> samples;
        for (int s = 0; s < m; ++s) {
            const double t = 2.0 * M_PI * s / m;
            const cplx lam(std::cos(t), std::sin(t));
            const Mat g = gamma.evaluate(lam);
            samples.push_back(g * b * inverse(g));
        }
        for (int freq = -m / 2 + 1; freq <= m / 2; ++freq) {
            Mat coeff(n, n);
            for (int s = 0; s < m; ++s) {
                const double t = 2.0 * M_PI * s / m;
                const cplx w(std::cos(freq * t), -std::sin(freq * t));
                Mat term = samples[s];
                term *= w / double(m);
                coeff += term;
            }
            if (coeff.frobenius_norm() > tol) k = std::max(k, std::abs(freq));
        }
    }
    return k;
}

// gamma within `radius` of the identity loop in the max-coefficient norm
inline LaurentMatrix random_near_identity_loop(const SymmetricSpaceSpec& spec, std::mt19937& rng,
                                               double radius = 0.1, int max_power = 1) {
    for (;;) {
        const LaurentMatrix g = random_twisted_loop(spec, rng, 4, radius / 4.0, max_power);
        if (g.dist_identity() < radius) return g;
    }
}

// population for the Iwasawa acceptance: real loop times pointwise-lower
// plus loop, so the pointwise splitting oracle applies exactly
inline LaurentMatrix random_oracle_compatible_loop(const SymmetricSpaceSpec& spec,
                                                   std::mt19937& rng, double radius = 0.1) {
    for (;;) {
        const LaurentMatrix r = random_real_loop(spec, rng, 1, radius / 3.0);
        const LaurentMatrix t = random_plus_loop(spec, rng, 1, radius / 3.0, true);
        const LaurentMatrix g = multiply(r, t);
        if (g.dist_identity() < radius) return g;
    }
}

} // namespace testsupport
