#pragma once

#include <vector>

#include "dpwlab/laurent.hpp"
#include "dpwlab/symmetric_space.hpp"

namespace dpwlab {

inline constexpr double kFactorTol = 1e-8;

// gamma = minus * plus with minus = e + strictly negative powers and plus
// holding nonnegative powers only.
struct BirkhoffResult {
    LaurentMatrix minus;
    LaurentMatrix plus;
    double residual = 0.0;
};

enum class CellFlag { IdentityCell, OutsideCell };

// gamma = unitaryPart * plusPart with the unitary part fixed by the reality
// involution and plusPart(0) upper triangular with positive real diagonal.
struct IwasawaResult {
    LaurentMatrix unitary_part;
    LaurentMatrix plus_part;
    CellFlag cell = CellFlag::IdentityCell;
    double reconstruction_residual = 0.0;
    double reality_residual = 0.0;
};

struct FactorOptions {
    int depth = -1;          // Birkhoff ansatz depth; -1 = n * |lo| default
    double tol = kFactorTol; // success threshold
};

// Solves the block-Toeplitz system killing the strictly negative Fourier
// coefficients of minus^-1 * gamma. Throws NotInBigCell when the system is
// singular or inconsistent beyond tol.
BirkhoffResult birkhoff(const LaurentMatrix& gamma, const FactorOptions& opts = {});

// Symmetrized-loop reduction: S = rho(gamma)^-1 gamma is Birkhoff-split, the
// constant H = rho(S+) S- is factored through the signature Cholesky, and the
// factors are reassembled. Outside the identity cell the result carries
// CellFlag::OutsideCell (compact form failures are numerical and throw).
IwasawaResult iwasawa(const LaurentMatrix& gamma, const SymmetricSpaceSpec& spec,
                      const FactorOptions& opts = {});

double birkhoff_round_trip_residual(const LaurentMatrix& gamma, const FactorOptions& opts = {});
double iwasawa_round_trip_residual(const LaurentMatrix& gamma, const SymmetricSpaceSpec& spec,
                                   const FactorOptions& opts = {});

// Embarrassingly parallel contract: per-item results only depend on per-item
// inputs; no cross-item ordering is guaranteed.
std::vector<BirkhoffResult> birkhoff_batch(const std::vector<LaurentMatrix>& gammas,
                                           const FactorOptions& opts = {});
std::vector<IwasawaResult> iwasawa_batch(const std::vector<LaurentMatrix>& gammas,
                                         const SymmetricSpaceSpec& spec,
                                         const FactorOptions& opts = {});

} // namespace dpwlab
