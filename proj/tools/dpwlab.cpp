#include <CLI11.hpp>

#include <complex>
#include <iostream>
#include <sstream>

#include "dpwlab/pipeline.hpp"

namespace {

using namespace dpwlab;

int exit_code_for(const Error& e) {
    const std::string& k = e.kind();
    if (k == "IoError") return 4;
    if (k == "NotInBigCell" || k == "OutsideCell" || k == "PoleOnPath" ||
        k == "NumericalError" || k == "NotAlgebraic")
        return 3;
    return 2; // validation-type failures
}

GridSpec parse_grid_flag(const std::string& s) {
    GridSpec g;
    std::stringstream ss(s);
    std::string item;
    std::vector<double> vals;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    if (vals.size() != 4)
        throw ValidationError("grid flag must be re,im,radius,steps");
    g.center = cplx(vals[0], vals[1]);
    g.radius = vals[2];
    g.steps = int(vals[3]);
    return g;
}

void write_or_print(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json_file(out, j);
}

FrameField load_frames(const std::string& path) {
    return frame_field_from_json(load_json_file(path));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"loop-group computations for harmonic maps into inner symmetric spaces"};
    app.require_subcommand(1);

    // ---- factor ----------------------------------------------------------
    auto* factor_cmd = app.add_subcommand("factor", "Birkhoff / Iwasawa factorization");
    factor_cmd->require_subcommand(1);
    std::string fac_loop, fac_spec, fac_out;
    int fac_depth = -1;
    double fac_tol = kFactorTol;

    auto* birkhoff_cmd = factor_cmd->add_subcommand("birkhoff", "split into minus * plus");
    birkhoff_cmd->add_option("loop", fac_loop, "loop JSON file")->required();
    birkhoff_cmd->add_option("--depth", fac_depth, "ansatz depth override");
    birkhoff_cmd->add_option("--tol", fac_tol, "success tolerance");
    birkhoff_cmd->add_option("--out", fac_out, "output file (stdout default)");

    auto* iwasawa_cmd = factor_cmd->add_subcommand("iwasawa", "split into unitary * plus");
    iwasawa_cmd->add_option("loop", fac_loop, "loop JSON file")->required();
    iwasawa_cmd->add_option("--spec", fac_spec, "symmetric space spec JSON")->required();
    iwasawa_cmd->add_option("--tol", fac_tol, "success tolerance");
    iwasawa_cmd->add_option("--out", fac_out, "output file (stdout default)");

    // ---- dpw -------------------------------------------------------------
    auto* dpw_cmd = app.add_subcommand("dpw", "potential to extended-frame pipeline");
    dpw_cmd->require_subcommand(1);
    std::string dpw_potential, dpw_grid = "0,0,1.4,21", dpw_out = "frames.json";
    auto* dpw_run = dpw_cmd->add_subcommand("run", "build extended frames on a grid");
    dpw_run->add_option("potential", dpw_potential, "potential JSON file")->required();
    dpw_run->add_option("--grid", dpw_grid, "re,im,radius,steps");
    dpw_run->add_option("--out", dpw_out, "frame field output file");

    // ---- uniton ----------------------------------------------------------
    auto* uniton_cmd = app.add_subcommand("uniton", "downstream of a frame field");
    uniton_cmd->require_subcommand(1);
    std::string un_frames, un_solution, un_out, un_csv, un_loop, un_potential, un_path, un_label;
    std::vector<std::string> un_monodromy_files;
    int un_lambdas = 32;

    auto* embed_cmd = uniton_cmd->add_subcommand("embed", "Cartan-embed a frame field");
    embed_cmd->add_option("--frames", un_frames)->required();
    embed_cmd->add_option("--out", un_out);
    embed_cmd->add_option("--csv", un_csv, "unit-vector CSV export (n = 2 compact)");

    auto* solution_cmd = uniton_cmd->add_subcommand("solution", "based extended solution");
    solution_cmd->add_option("--frames", un_frames)->required();
    solution_cmd->add_option("--out", un_out);

    auto* number_cmd = uniton_cmd->add_subcommand("number", "uniton number upper bound");
    number_cmd->add_option("--frames", un_frames);
    number_cmd->add_option("--solution", un_solution);
    number_cmd->add_option("--out", un_out);

    auto* dress_cmd = uniton_cmd->add_subcommand("dress", "dress by a plus loop");
    dress_cmd->add_option("--frames", un_frames)->required();
    dress_cmd->add_option("--loop", un_loop)->required();
    dress_cmd->add_option("--out", un_out);

    auto* dualize_cmd = uniton_cmd->add_subcommand("dualize", "compact dual frame field");
    dualize_cmd->add_option("--frames", un_frames)->required();
    dualize_cmd->add_option("--out", un_out);

    auto* monodromy_cmd = uniton_cmd->add_subcommand("monodromy", "transport around a generator");
    monodromy_cmd->add_option("--potential", un_potential)->required();
    monodromy_cmd->add_option("--path", un_path, "circle:cx=..,cy=..,r=..,segments=..")->required();
    monodromy_cmd->add_option("--lambdas", un_lambdas, "unit-circle sample count");
    monodromy_cmd->add_option("--label", un_label);
    monodromy_cmd->add_option("--out", un_out);

    auto* classify_cmd = uniton_cmd->add_subcommand("classify", "algebraic / totally-symmetric verdict object");
    classify_cmd->add_option("--frames", un_frames)->required();
    classify_cmd->add_option("--monodromy", un_monodromy_files, "monodromy record files");
    classify_cmd->add_option("--out", un_out);

    // ---- verify ----------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "residual checks on a frame field");
    std::string ver_frames, ver_checks = "mc,reality,twist,es", ver_report;
    verify_cmd->add_option("frames", ver_frames, "frame field JSON")->required();
    verify_cmd->add_option("--checks", ver_checks, "comma-separated check list");
    verify_cmd->add_option("--report", ver_report, "report output file");

    // ---- run -------------------------------------------------------------
    auto* run_cmd = app.add_subcommand("run", "run a configured pipeline");
    std::string run_config, run_out;
    std::vector<std::string> run_tols;
    unsigned run_seed = 0;
    bool run_seed_set = false;
    run_cmd->add_option("--config", run_config, "run configuration JSON")->required();
    run_cmd->add_option("--out", run_out, "output directory override");
    run_cmd->add_option("--tol", run_tols, "name=value tolerance overrides");
    run_cmd->add_option("--seed", run_seed, "seed for random-suite commands")
        ->each([&](const std::string&) { run_seed_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (birkhoff_cmd->parsed()) {
            const LaurentMatrix g = laurent_from_json(load_json_file(fac_loop));
            FactorOptions opts;
            opts.depth = fac_depth;
            opts.tol = fac_tol;
            write_or_print(to_json(birkhoff(g, opts)), fac_out);
        } else if (iwasawa_cmd->parsed()) {
            const LaurentMatrix g = laurent_from_json(load_json_file(fac_loop));
            const SymmetricSpaceSpec spec = spec_from_json_value(load_json_file(fac_spec));
            FactorOptions opts;
            opts.tol = fac_tol;
            const IwasawaResult r = iwasawa(g, spec, opts);
            write_or_print(to_json(r), fac_out);
            if (r.cell == CellFlag::OutsideCell) return 3;
        } else if (dpw_run->parsed()) {
            const Potential eta = load_potential(dpw_potential);
            const FrameField field = build_extended_frame(eta, parse_grid_flag(dpw_grid));
            save_json_file(dpw_out, to_json(field));
        } else if (embed_cmd->parsed()) {
            const ModifiedHarmonicMap m = cartan_embed(load_frames(un_frames));
            write_or_print(to_json(m), un_out);
            if (!un_csv.empty()) export_sphere_map(m, un_csv);
        } else if (solution_cmd->parsed()) {
            write_or_print(to_json(extended_solution(load_frames(un_frames))), un_out);
        } else if (number_cmd->parsed()) {
            ExtendedSolutionField phi;
            if (!un_solution.empty())
                phi = sample_field_from_json(load_json_file(un_solution));
            else if (!un_frames.empty())
                phi = extended_solution(load_frames(un_frames));
            else
                throw ValidationError("number needs --frames or --solution");
            write_or_print(to_json(uniton_number(phi)), un_out);
        } else if (dress_cmd->parsed()) {
            const LaurentMatrix h_plus = laurent_from_json(load_json_file(un_loop));
            write_or_print(to_json(dress(h_plus, load_frames(un_frames))), un_out);
        } else if (dualize_cmd->parsed()) {
            write_or_print(to_json(dualize(load_frames(un_frames))), un_out);
        } else if (monodromy_cmd->parsed()) {
            const Potential eta = load_potential(un_potential);
            const MonodromyRecord rec = monodromy(eta, parse_path_spec(un_path),
                                                  unit_circle_samples(un_lambdas), un_label);
            write_or_print(to_json(rec), un_out);
        } else if (classify_cmd->parsed()) {
            std::vector<MonodromyRecord> recs;
            for (const auto& f : un_monodromy_files) {
                const json j = load_json_file(f);
                if (j.is_array())
                    for (const auto& r : j) recs.push_back(monodromy_record_from_json(r));
                else
                    recs.push_back(monodromy_record_from_json(j));
            }
            write_or_print(to_json(classify_uniton_type(load_frames(un_frames), recs)), un_out);
        } else if (verify_cmd->parsed()) {
            RunConfig cfg;
            cfg.verify_checks.clear();
            std::stringstream ss(ver_checks);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.verify_checks.push_back(item);
            const FrameField field = load_frames(ver_frames);
            json reports = json::array();
            const double step = std::max(field.grid.step_x, field.grid.step_y);
            std::optional<ModifiedHarmonicMap> embedded;
            std::optional<ExtendedSolutionField> solution;
            for (const auto& check : cfg.verify_checks) {
                if (check == "mc") {
                    const MaurerCartanReport mc =
                        maurer_cartan_residual(field, {cplx(1.0), cplx(0.0, 1.0), cplx(-1.0)});
                    ResidualReport rep;
                    rep.check_name = "mc";
                    rep.per_point = mc.residual;
                    for (double r : mc.residual)
                        rep.max_residual = std::max(rep.max_residual, r);
                    rep.tolerance = 10.0 * step * step;
                    rep.settle();
                    if (mc.coarse_grid_warning) rep.verdict = "inconclusive";
                    reports.push_back(to_json(rep));
                } else if (check == "reality" || check == "twist") {
                    ResidualReport rep = reality_twist_suite(field);
                    rep.check_name = check;
                    reports.push_back(to_json(rep));
                } else if (check == "es") {
                    if (!embedded.has_value()) embedded = cartan_embed(field);
                    if (!solution.has_value()) solution = extended_solution(field);
                    reports.push_back(to_json(extended_solution_residual(
                        *solution, *embedded, unit_circle_samples(8), 10.0 * step * step)));
                } else {
                    throw ValidationError("unknown verify check \"" + check + "\"");
                }
            }
            write_or_print(reports, ver_report);
        } else if (run_cmd->parsed()) {
            RunConfig cfg = RunConfig::from_file(run_config);
            if (!run_out.empty()) cfg.out_dir = run_out;
            for (const auto& t : run_tols) {
                const auto eq = t.find('=');
                if (eq == std::string::npos)
                    throw ValidationError("--tol expects name=value");
                cfg.tol.set(t.substr(0, eq), std::stod(t.substr(eq + 1)));
            }
            if (run_seed_set) cfg.seed = run_seed;
            const PipelineResult res = run_pipeline(cfg);
            std::cout << res.summary.dump(2) << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
