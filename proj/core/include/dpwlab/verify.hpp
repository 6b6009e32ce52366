#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpwlab/factorization.hpp"
#include "dpwlab/frame_field.hpp"

namespace dpwlab {

struct ResidualReport {
    std::string check_name;
    double max_residual = 0.0;
    std::vector<double> per_point;
    std::optional<double> convergence_order; // only when two resolutions ran
    double tolerance = 0.0;
    std::string verdict = "inconclusive"; // pass | fail | inconclusive

    void settle() { verdict = max_residual < tolerance ? "pass" : "fail"; }
};

// order estimate from residuals at step h and h/2
double convergence_order(double coarse, double fine);

// Discretized residual of the extended-solution system
//   d Phi (v) = Phi [ (1 - lt^-1) A'(v) + (1 - lt) B'(v) ],  A = A'dz + B'dzbar,
// with A = (1/2) Fhat^-1 dFhat taken from the lambda = 1 slice of the
// modified map. Degenerates to zero identically at lt = 1.
double extended_solution_residual_at(const ExtendedSolutionField& phi,
                                     const ModifiedHarmonicMap& embedded, cplx lambda_tilde,
                                     bool core_only = false);

ResidualReport extended_solution_residual(const ExtendedSolutionField& phi,
                                          const ModifiedHarmonicMap& embedded,
                                          const std::vector<cplx>& lambda_tildes,
                                          double tolerance);

// Pointwise cross-check of the loop Iwasawa splitting on the compact form:
// at each sampled lambda the matrix gamma(lambda) is split into unitary
// times triangular and the unitary factors are compared after per-column
// phase alignment. Exact only where the loop plus factor evaluates
// triangular on the circle (unitary inputs, CP^1-type loops, and products
// real * pointwise-lower plus factor); see the tests for a counterexample.
ResidualReport pointwise_factorization_oracle(const LaurentMatrix& gamma,
                                              const SymmetricSpaceSpec& spec,
                                              const std::vector<cplx>& lambdas,
                                              double tolerance = kFactorTol,
                                              const FactorOptions& opts = {});

// Pointwise identity-cell test for the indefinite form (2x2-oriented):
// trailing principal minors of gamma^H J gamma against the trailing sign
// products of J.
bool pointwise_cell_oracle(const LaurentMatrix& gamma, const SymmetricSpaceSpec& spec,
                           const std::vector<cplx>& lambdas);

ResidualReport reality_twist_suite(const FrameField& field, double tolerance = kFactorTol);

struct AlgebraicityCertificate {
    bool is_laurent = true;
    int lo = 0, hi = 0; // degree spread across the field
    double max_tail = 0.0;
};
AlgebraicityCertificate algebraicity_certificate(const FrameField& field,
                                                 double tail_tol = 1e-10);

} // namespace dpwlab
