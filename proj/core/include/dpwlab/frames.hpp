#pragma once

#include <optional>

#include "dpwlab/factorization.hpp"
#include "dpwlab/frame_field.hpp"
#include "dpwlab/picard.hpp"
#include "dpwlab/potential.hpp"

namespace dpwlab {

struct BuildOptions {
    std::optional<IntegrationMode> mode; // unset = nilpotent when possible
    PicardOptions picard;
    FactorOptions factor;
};

// DPW step: integrate dC = C eta from the basepoint to every grid point and
// Iwasawa-split; excluded points (outside cell / pole on the straight path)
// are masked, not fatal.
FrameField build_extended_frame(const Potential& eta, const GridSpec& grid,
                                const BuildOptions& opts = {});

// Left-multiplies the field by the inverse of its basepoint frame.
void normalize_at_basepoint(FrameField& field);

// Sampled eta_hat = F_-^{-1} dF_- recovered per point via Birkhoff plus a
// centered z-derivative along grid lines.
struct SampledPotential {
    GridInfo grid;                 // interior points only
    std::vector<Mat> coefficient;  // lambda^-1 coefficient per point
    std::vector<char> valid;
    double max_off_structure = 0.0;  // mass at lambda-degrees other than -1
    double max_parity_residual = 0.0; // k^C contamination of the -1 coefficient
};
SampledPotential normalized_potential_from_frame(const FrameField& field,
                                                 const FactorOptions& opts = {});

struct MaurerCartanReport {
    std::vector<cplx> lambdas;
    std::vector<double> residual;      // per lambda, max over interior points
    std::vector<double> residual_core; // max over the centered half-width box;
                                       // region-stable under step halving
    bool coarse_grid_warning = false;
};
// Assembles alpha_lambda from the lambda = 1 slice by h-parity splitting and
// returns the discretized flatness defect per lambda sample.
MaurerCartanReport maurer_cartan_residual(const FrameField& field,
                                          const std::vector<cplx>& lambdas);

// True when the grid point lies in the centered box of half the grid's
// half-width (the region used for step-halving comparisons).
bool in_core_region(const GridInfo& grid, int index);

double frame_field_distance(const FrameField& a, const FrameField& b);

} // namespace dpwlab
