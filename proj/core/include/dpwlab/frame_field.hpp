#pragma once

#include <string>
#include <vector>

#include "dpwlab/laurent.hpp"
#include "dpwlab/symmetric_space.hpp"

namespace dpwlab {

// Planar sample layout shared by frame fields and everything derived from
// them. Row-major when rows*cols matches; otherwise an explicit point list.
struct GridInfo {
    std::vector<cplx> z;
    int rows = 0, cols = 0;
    double step_x = 0.0, step_y = 0.0;
    int basepoint_index = -1;

    bool is_grid() const { return rows > 0 && cols > 0 && rows * cols == int(z.size()); }
    int index(int r, int c) const { return r * cols + c; }
    int count() const { return int(z.size()); }
};

struct GridSpec {
    cplx center = 0.0;
    double radius = 1.0;
    int steps = 21;
    std::vector<cplx> points; // when nonempty, overrides the square grid

    GridInfo build(cplx basepoint) const;
};

enum class Provenance { FromPotential, Dressed, Dualized, Continued };
std::string to_string(Provenance p);

// Extended frame samples F(z_i, lambda) on a planar grid.
struct FrameField {
    SymmetricSpaceSpec spec;
    GridInfo grid;
    std::vector<LaurentMatrix> frames;
    std::vector<char> in_cell;   // exclusion mask (false = outside cell / pole)
    std::vector<double> tail;    // numeric-truncation leftover per point
    Provenance provenance = Provenance::FromPotential;
    bool basepoint_normalized = true;

    int count() const { return grid.count(); }
    bool all_in_cell() const;
    double max_tail() const;
};

// Per-point matrix samples derived from a frame field (Cartan embedding,
// extended solutions).
struct LoopSampleField {
    SymmetricSpaceSpec spec;
    GridInfo grid;
    std::vector<LaurentMatrix> samples;
    std::vector<char> valid;
    std::vector<double> tail; // inherited truncation leftovers, when known
};

using ModifiedHarmonicMap = LoopSampleField;  // F h F^-1 per point
using ExtendedSolutionField = LoopSampleField; // F(.,lambda) F(.,1)^-1 per point

std::vector<cplx> unit_circle_samples(int m);

} // namespace dpwlab
