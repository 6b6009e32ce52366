#pragma once

#include <string>
#include <vector>

#include "dpwlab/frames.hpp"

namespace dpwlab {

// F h F^-1 per point; squares to the identity loop and equals h at the
// basepoint.
ModifiedHarmonicMap cartan_embed(const FrameField& frames, double tol = 1e-8);

// Based extended solution Phi(z, .) = F(z, .) F(z, 1)^-1. Its value at
// lambda = -1 is h^-1 times the modified map; the constant left factor does
// not change the connection 2A = F^-1 dF of the transport equations.
ExtendedSolutionField extended_solution(const FrameField& frames);

struct UnitonCertificate {
    int number = 0;
    int attaining_index = -1;
    cplx attaining_z = 0.0;
    // r(Phi) bounds the minimal uniton number from above; the minimization
    // over based-loop translations is not computed.
    std::string note;
};
UnitonCertificate uniton_number(const ExtendedSolutionField& phi, double tail_tol = 1e-10);

struct MonodromyRecord {
    std::string path_label;
    std::vector<cplx> lambdas;
    std::vector<Mat> chi;
    double max_deviation = 0.0;     // max over lambda of ||chi - e||_F
    double real_form_residual = 0.0; // max over lambda of ||chi^H J chi - J||_F
};

struct ClassificationVerdict {
    bool algebraic = false;
    bool totally_symmetric = false;
    bool finite_uniton_type = false;
};
// algebraic = all frames Laurent; totally symmetric = every monodromy
// record trivial below tol. An empty record list means a simply connected
// chart, so the monodromy condition is vacuous.
ClassificationVerdict classify_uniton_type(const FrameField& frames,
                                           const std::vector<MonodromyRecord>& monodromy,
                                           double algebraic_tol = 1e-10,
                                           double monodromy_tol = 1e-6);

// h_plus # F : per-point Iwasawa of h_plus * F, renormalized at the
// basepoint; excluded points are masked.
FrameField dress(const LaurentMatrix& h_plus, const FrameField& frames,
                 const FactorOptions& opts = {});

// Re-splits each frame against the reality involution of `target` and keeps
// the real factor. The public duality direction is indefinite -> compact
// dual; running it with the indefinite spec inverts it.
FrameField dualize_to(const FrameField& frames, const SymmetricSpaceSpec& target,
                      const FactorOptions& opts = {});
FrameField dualize(const FrameField& frames, const FactorOptions& opts = {});

// chi(lambda) from transporting dC = C eta around the closed polygon;
// coefficient-space transport with a per-lambda fallback when the
// coefficient window saturates.
MonodromyRecord monodromy(const Potential& eta, const std::vector<cplx>& polygon,
                          const std::vector<cplx>& lambdas, const std::string& label = "",
                          const PicardOptions& opts = {});

// Deviation-only variant for frame fields: compares Cartan-embedded values at
// identified sample pairs, which removes the right K-ambiguity.
double monodromy_deviation_from_frames(const ModifiedHarmonicMap& embedded,
                                       const std::vector<std::pair<int, int>>& identified_pairs,
                                       const std::vector<cplx>& lambdas);

// Residual of g*Phi = (A^-1 chi(lambda) A) Phi chi(1)^-1 for the based
// solution built from holomorphic-frame transports (A = Phi at the basepoint
// = e). Both sides come from independent numeric transports: the left side
// from continuation around the generator, the right side from the monodromy
// record. The frame-level form of the relation needs the harmonic map to
// descend to the chart (real monodromy); the transport-level form holds for
// every potential.
struct MonodromyRelationReport {
    double relation_residual = 0.0;
    double monodromy_deviation = 0.0;
};
MonodromyRelationReport extended_solution_monodromy_relation(
    const Potential& eta, const std::vector<cplx>& polygon,
    const std::vector<cplx>& sample_points, const std::vector<cplx>& lambdas,
    const BuildOptions& opts = {});

// Transports dPsi = Psi F^-1 dF (the lambda-tilde = -1 member of the
// extended-solution system) from the basepoint along a segment and measures
// how far Psi F^-1 is from the constant h^-1.
double a_transport_residual(const Potential& eta, cplx target_z,
                            const std::vector<cplx>& lambdas, const BuildOptions& opts = {});

// (G x G)/Delta frame consistency: the pair (Phi(., -lambda), Phi(., lambda))
// carries the component connections (1 +- lambda^-+1) A and pins
// (h^-1 F-hat, e) at lambda = 1.
struct PairFrameReport {
    double value_residual = 0.0;     // Phi(.,1) vs e and Phi(.,-1) vs h^-1 Fhat
    double component_mc_residual = 0.0;
};
PairFrameReport pair_frame_residual(const ExtendedSolutionField& phi,
                                    const ModifiedHarmonicMap& embedded,
                                    const std::vector<cplx>& lambdas);

// left-translation of a solution field by a based loop (manual operation)
ExtendedSolutionField translate_solution(const LaurentMatrix& gamma,
                                         const ExtendedSolutionField& phi);

} // namespace dpwlab
