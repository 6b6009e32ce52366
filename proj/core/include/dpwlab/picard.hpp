#pragma once

#include <functional>
#include <vector>

#include "dpwlab/laurent.hpp"
#include "dpwlab/potential.hpp"

namespace dpwlab {

enum class IntegrationMode { ExactNilpotent, Numeric };

struct PicardOptions {
    bool rational = false;          // exact rational coefficients (nilpotent mode)
    std::vector<int> block_sizes;   // nilpotent flag pattern; empty = size-1 blocks
    double tail_tol = 1e-10;        // numeric window growth threshold
    double ode_tol = 1e-9;          // numeric step-doubling tolerance
    int max_window = 64;            // numeric degree-window half-size cap
    double pole_tol = 1e-12;
};

struct PicardResult {
    LaurentMatrix value;     // C(target, .) with C(z0) = e
    int steps = 0;           // Picard iterations until fixpoint (exact mode)
    double tail_norm = 0.0;  // residual mass at the window boundary (numeric mode)
};

// Solves dC = C eta, C(z0) = e, along the straight segment z0 -> target.
PicardResult picard_integrate(const Potential& eta, cplx target_z, IntegrationMode mode,
                              const PicardOptions& opts = {});

// Numeric transport of the same ODE along a polygonal path (loop-coefficient
// space). Used for monodromy around closed paths.
PicardResult transport_along_path(const Potential& eta, const std::vector<cplx>& vertices,
                                  const PicardOptions& opts = {});

// Per-lambda transport: the ODE becomes an ordinary n x n system once lambda
// is fixed. Fallback for non-algebraic monodromy loops.
Mat transport_at_lambda(const Potential& eta, const std::vector<cplx>& vertices, cplx lambda,
                        const PicardOptions& opts = {});

// Generic RK4 with step doubling for matrix ODEs dY = Y * A(z) dz along a
// segment; `rhs` maps z to A(z).
Mat integrate_matrix_ode(const std::function<Mat(cplx)>& rhs, cplx z0, cplx z1, const Mat& y0,
                         double tol);

} // namespace dpwlab
