#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpwlab/io.hpp"
#include "dpwlab/potential.hpp"
#include "dpwlab/uniton.hpp"

namespace dpwlab {

struct Tolerances {
    double factor = 1e-8;           // factorization success threshold
    double algebraic = 1e-10;       // Laurent tail threshold
    double monodromy_trivial = 1e-6;
    double integrator = 1e-9;
    double mc_scale = 10.0;         // MC tolerance = mc_scale * step^2

    // named override surface for --tol name=value
    void set(const std::string& name, double value);
};

struct MonodromyPathSpec {
    std::string label;
    std::vector<cplx> polygon;
};

struct RunConfig {
    std::string potential_path;
    std::optional<SymmetricSpaceSpec> spec_override;
    GridSpec grid;
    std::vector<std::string> stages;
    // dress stage input: a loop file, or a seeded random plus loop
    std::string dress_loop_path;
    bool dress_random = false;
    int dress_hi = 2;
    double dress_scale = 0.3;
    std::vector<MonodromyPathSpec> monodromy_paths;
    int monodromy_lambda_count = 32;
    std::vector<std::string> verify_checks = {"mc", "reality", "twist", "es"};
    std::string out_dir = ".";
    Tolerances tol;
    unsigned seed = 1;

    static RunConfig from_json(const json& j, const std::string& base_dir);
    static RunConfig from_file(const std::string& path);
    void validate() const; // stage names, dependency order
};

struct PipelineResult {
    json summary;
    std::vector<std::string> artifacts; // files written
};

// Runs the configured stages in order, writing one JSON artifact per stage
// plus summary.json. Deterministic for fixed config and inputs.
PipelineResult run_pipeline(const RunConfig& config);

// n = 2 compact only: expands F-hat(z, 1) in the su(2) involution basis and
// writes re(z), im(z), x, y, z rows.
void export_sphere_map(const ModifiedHarmonicMap& embedded, const std::string& path);

// shared helper for CLI path specs like "circle:cx=0,cy=0,r=1,segments=64"
std::vector<cplx> parse_path_spec(const std::string& spec);

} // namespace dpwlab
