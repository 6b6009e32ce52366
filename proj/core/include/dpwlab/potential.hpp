#pragma once

#include <string>
#include <vector>

#include "dpwlab/laurent.hpp"
#include "dpwlab/poly.hpp"
#include "dpwlab/symmetric_space.hpp"

namespace dpwlab {

enum class PotentialKind { Normalized, Holomorphic };

std::string to_string(PotentialKind k);

struct PotentialTerm {
    int power = -1;
    RationalMatrix matrix;
};

// A lambda-graded matrix-valued (1,0)-form eta = sum_j lambda^j A_j(z) dz
// with rational-function coefficients. `Normalized` means a single
// lambda^-1 term with p^C-valued coefficient; `Holomorphic` allows powers
// >= -1 under the twisted parity rule (k^C at even powers, p^C at odd).
struct Potential {
    SymmetricSpaceSpec spec;
    cplx basepoint = 0.0;
    PotentialKind kind = PotentialKind::Normalized;
    std::vector<PotentialTerm> terms;

    int min_power() const;
    int max_power() const;

    // A(z) as a Laurent matrix (the loop coefficient of dz at the point z)
    LaurentMatrix eval(cplx z, double pole_tol = 1e-12) const;
    double min_denominator_magnitude(cplx z) const;

    // Structural checks at `samples` pseudo-random points near the basepoint.
    // Throws ValidationError naming the failing term and sample.
    void validate(int samples = 16) const;

    // True when every term is polynomial and valued in the strictly
    // block-upper-triangular pattern given by block sizes (empty = size-1
    // blocks, i.e. strictly upper triangular).
    bool is_nilpotent_upper(const std::vector<int>& block_sizes = {}) const;
    bool is_polynomial() const;
};

// Parses the potential file format. Parse errors carry line/column; contract
// violations name the offending term.
Potential parse_potential(const std::string& text);
Potential load_potential(const std::string& path);

std::string potential_to_json_text(const Potential& eta);

} // namespace dpwlab
