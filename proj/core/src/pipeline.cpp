#include "dpwlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dpwlab/random_loops.hpp"
#include "dpwlab/verify.hpp"

namespace dpwlab {

namespace fs = std::filesystem;

void Tolerances::set(const std::string& name, double value) {
    if (name == "factor") factor = value;
    else if (name == "algebraic") algebraic = value;
    else if (name == "monodromyTrivial") monodromy_trivial = value;
    else if (name == "integrator") integrator = value;
    else if (name == "mcScale") mc_scale = value;
    else
        throw ValidationError("unknown tolerance \"" + name +
                              "\"; known: factor, algebraic, monodromyTrivial, integrator, "
                              "mcScale");
}

namespace {

const std::vector<std::string> kKnownStages = {"frames",   "embed",    "solution",
                                               "number",   "dress",    "dualize",
                                               "monodromy", "classify", "verify"};

const std::map<std::string, std::vector<std::string>> kPrereq = {
    {"frames", {}},
    {"embed", {"frames"}},
    {"solution", {"frames"}},
    {"number", {"solution"}},
    {"dress", {"frames"}},
    {"dualize", {"frames"}},
    {"monodromy", {}},
    {"classify", {"frames"}},
    {"verify", {"frames"}},
};

cplx complex_from_json(const json& v, const std::string& where) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2) return cplx(v[0].get<double>(), v[1].get<double>());
    throw ValidationError(where + ": expected number or [re, im]");
}

} // namespace

RunConfig RunConfig::from_json(const json& j, const std::string& base_dir) {
    static const char* known[] = {"potential", "spec",      "grid",   "stages", "dress",
                                  "monodromy", "verify",    "out",    "tolerances", "seed"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ValidationError("unknown key \"" + it.key() + "\" in run config");
    }
    RunConfig cfg;
    auto resolve = [&](const std::string& p) {
        if (p.empty() || fs::path(p).is_absolute() || base_dir.empty()) return p;
        return (fs::path(base_dir) / p).string();
    };
    if (!j.contains("potential")) throw ValidationError("run config requires a potential path");
    cfg.potential_path = resolve(j.at("potential").get<std::string>());
    if (j.contains("spec")) {
        if (j.at("spec").is_string())
            cfg.spec_override = spec_from_json_value(load_json_file(resolve(j.at("spec").get<std::string>())));
        else
            cfg.spec_override = spec_from_json_value(j.at("spec"));
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        for (auto it = g.begin(); it != g.end(); ++it)
            if (it.key() != "center" && it.key() != "radius" && it.key() != "steps" &&
                it.key() != "points")
                throw ValidationError("unknown key \"" + it.key() + "\" in grid");
        if (g.contains("points")) {
            for (const auto& p : g.at("points"))
                cfg.grid.points.push_back(complex_from_json(p, "grid.points"));
        } else {
            if (g.contains("center")) cfg.grid.center = complex_from_json(g.at("center"), "grid.center");
            if (g.contains("radius")) cfg.grid.radius = g.at("radius").get<double>();
            if (g.contains("steps")) cfg.grid.steps = g.at("steps").get<int>();
        }
    }
    if (j.contains("stages"))
        for (const auto& s : j.at("stages")) cfg.stages.push_back(s.get<std::string>());
    if (j.contains("dress")) {
        const auto& d = j.at("dress");
        for (auto it = d.begin(); it != d.end(); ++it)
            if (it.key() != "loop" && it.key() != "random" && it.key() != "hi" &&
                it.key() != "scale")
                throw ValidationError("unknown key \"" + it.key() + "\" in dress config");
        if (d.contains("loop")) cfg.dress_loop_path = resolve(d.at("loop").get<std::string>());
        if (d.contains("random")) cfg.dress_random = d.at("random").get<bool>();
        if (d.contains("hi")) cfg.dress_hi = d.at("hi").get<int>();
        if (d.contains("scale")) cfg.dress_scale = d.at("scale").get<double>();
    }
    if (j.contains("monodromy")) {
        const auto& m = j.at("monodromy");
        if (m.contains("lambdas")) cfg.monodromy_lambda_count = m.at("lambdas").get<int>();
        if (m.contains("paths"))
            for (const auto& p : m.at("paths")) {
                MonodromyPathSpec ps;
                ps.label = p.value("label", "generator");
                if (p.contains("polygon")) {
                    for (const auto& v : p.at("polygon"))
                        ps.polygon.push_back(complex_from_json(v, "monodromy polygon"));
                } else if (p.contains("circle")) {
                    const auto& c = p.at("circle");
                    std::ostringstream os;
                    const cplx center = c.contains("center")
                                            ? complex_from_json(c.at("center"), "circle center")
                                            : cplx(0.0);
                    os << "circle:cx=" << center.real() << ",cy=" << center.imag()
                       << ",r=" << c.value("radius", 1.0)
                       << ",segments=" << c.value("segments", 64);
                    ps.polygon = parse_path_spec(os.str());
                } else {
                    throw ValidationError("monodromy path needs polygon or circle");
                }
                cfg.monodromy_paths.push_back(std::move(ps));
            }
    }
    if (j.contains("verify")) {
        cfg.verify_checks.clear();
        for (const auto& c : j.at("verify").at("checks"))
            cfg.verify_checks.push_back(c.get<std::string>());
    }
    if (j.contains("out")) cfg.out_dir = resolve(j.at("out").get<std::string>());
    if (j.contains("tolerances"))
        for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it)
            cfg.tol.set(it.key(), it.value().get<double>());
    if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned>();
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    return from_json(load_json_file(path), fs::path(path).parent_path().string());
}

void RunConfig::validate() const {
    if (stages.empty()) throw ValidationError("run config lists no stages");
    for (const auto& s : stages) {
        if (std::find(kKnownStages.begin(), kKnownStages.end(), s) == kKnownStages.end())
            throw ValidationError("unknown stage \"" + s + "\"");
        if (std::count(stages.begin(), stages.end(), s) > 1)
            throw ValidationError("stage \"" + s + "\" listed twice");
    }
    for (std::size_t i = 0; i < stages.size(); ++i)
        for (const auto& pre : kPrereq.at(stages[i])) {
            const auto it = std::find(stages.begin(), stages.begin() + i, pre);
            if (it == stages.begin() + long(i))
                throw ValidationError("stage \"" + stages[i] + "\" requires \"" + pre +
                                      "\" to run earlier");
        }
    // classify consumes monodromy records when both are present
    const auto c = std::find(stages.begin(), stages.end(), std::string("classify"));
    const auto m = std::find(stages.begin(), stages.end(), std::string("monodromy"));
    if (c != stages.end() && m != stages.end() && m > c)
        throw ValidationError("stage \"classify\" requires \"monodromy\" to run earlier");
}

std::vector<cplx> parse_path_spec(const std::string& spec) {
    if (spec.rfind("circle:", 0) != 0)
        throw ValidationError("path spec must look like circle:cx=..,cy=..,r=..,segments=..");
    double cx = 0.0, cy = 0.0, r = 1.0;
    int segments = 64;
    std::stringstream ss(spec.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ValidationError("bad path spec item \"" + item + "\"");
        const std::string key = item.substr(0, eq);
        const double val = std::stod(item.substr(eq + 1));
        if (key == "cx") cx = val;
        else if (key == "cy") cy = val;
        else if (key == "r") r = val;
        else if (key == "segments") segments = int(val);
        else throw ValidationError("unknown path spec key \"" + key + "\"");
    }
    std::vector<cplx> poly;
    for (int k = 0; k <= segments; ++k) {
        const double t = 2.0 * M_PI * k / segments;
        poly.emplace_back(cx + r * std::cos(t), cy + r * std::sin(t));
    }
    poly.back() = poly.front();
    return poly;
}

void export_sphere_map(const ModifiedHarmonicMap& embedded, const std::string& path) {
    if (embedded.spec.n != 2 || embedded.spec.form != RealForm::Compact)
        throw Unsupported("sphere export requires the n = 2 compact form");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "re_z,im_z,x,y,z\n";
    char buf[256];
    for (int i = 0; i < embedded.grid.count(); ++i) {
        if (!embedded.valid[i]) continue;
        const Mat f = embedded.samples[i].evaluate(1.0);
        // F-hat = x1 s1 + x2 s2 + x3 s3 in the Pauli-type basis adapted to h
        const double x3 = f(0, 0).real();
        const double x1 = f(1, 0).real();
        const double x2 = f(1, 0).imag();
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      embedded.grid.z[i].real(), embedded.grid.z[i].imag(), x1, x2, x3);
        out << buf;
    }
}

namespace {

json stage_summary_min(const std::string& status) {
    json j;
    j["status"] = status;
    return j;
}

} // namespace

PipelineResult run_pipeline(const RunConfig& config) {
    config.validate();
    fs::create_directories(config.out_dir);
    PipelineResult result;
    json summary;
    summary["stages"] = config.stages;
    json results;

    Potential eta = load_potential(config.potential_path);
    if (config.spec_override.has_value()) {
        eta.spec = *config.spec_override;
        eta.validate();
    }

    BuildOptions build_opts;
    build_opts.factor.tol = config.tol.factor;
    build_opts.picard.ode_tol = config.tol.integrator;

    auto emit = [&](const std::string& name, const json& j) {
        const std::string path = (fs::path(config.out_dir) / (name + ".json")).string();
        save_json_file(path, j);
        result.artifacts.push_back(path);
    };

    std::optional<FrameField> frames;
    std::optional<ModifiedHarmonicMap> embedded;
    std::optional<ExtendedSolutionField> solution;
    std::vector<MonodromyRecord> monodromy_records;
    std::vector<std::string> completed;

    for (const auto& stage : config.stages) {
        try {
            if (stage == "frames") {
                frames = build_extended_frame(eta, config.grid, build_opts);
                emit("frames", to_json(*frames));
                json s = stage_summary_min("ok");
                int excluded = 0;
                for (char c : frames->in_cell)
                    if (!c) ++excluded;
                s["excludedPoints"] = excluded;
                results["frames"] = s;
            } else if (stage == "embed") {
                embedded = cartan_embed(*frames);
                emit("embedded", to_json(*embedded));
                json s = stage_summary_min("ok");
                if (eta.spec.n == 2 && eta.spec.form == RealForm::Compact) {
                    const std::string csv = (fs::path(config.out_dir) / "sphere.csv").string();
                    export_sphere_map(*embedded, csv);
                    result.artifacts.push_back(csv);
                    s["sphereCsv"] = "sphere.csv";
                }
                results["embed"] = s;
            } else if (stage == "solution") {
                solution = extended_solution(*frames);
                emit("solution", to_json(*solution));
                results["solution"] = stage_summary_min("ok");
            } else if (stage == "number") {
                const UnitonCertificate cert = uniton_number(*solution, config.tol.algebraic);
                emit("number", to_json(cert));
                json s = stage_summary_min("ok");
                s["unitonNumber"] = cert.number;
                results["number"] = s;
                summary["unitonNumber"] = cert.number;
            } else if (stage == "dress") {
                LaurentMatrix dresser;
                if (!config.dress_loop_path.empty()) {
                    dresser = laurent_from_json(load_json_file(config.dress_loop_path));
                } else if (config.dress_random) {
                    std::mt19937 rng(config.seed);
                    dresser = random_plus_loop(eta.spec, rng, config.dress_hi, config.dress_scale);
                } else {
                    throw ValidationError("dress stage needs a loop file or random: true");
                }
                frames = dress(dresser, *frames, build_opts.factor);
                emit("dressed", to_json(*frames));
                results["dress"] = stage_summary_min("ok");
            } else if (stage == "dualize") {
                frames = dualize(*frames, build_opts.factor);
                emit("dual", to_json(*frames));
                results["dualize"] = stage_summary_min("ok");
            } else if (stage == "monodromy") {
                json recs = json::array();
                for (const auto& p : config.monodromy_paths) {
                    PicardOptions popts = build_opts.picard;
                    MonodromyRecord rec =
                        monodromy(eta, p.polygon, unit_circle_samples(config.monodromy_lambda_count),
                                  p.label, popts);
                    recs.push_back(to_json(rec));
                    monodromy_records.push_back(std::move(rec));
                }
                emit("monodromy", recs);
                json s = stage_summary_min("ok");
                json dev = json::array();
                for (const auto& r : monodromy_records) dev.push_back(r.max_deviation);
                s["maxDeviations"] = dev;
                results["monodromy"] = s;
                summary["monodromy"] = dev;
            } else if (stage == "classify") {
                const ClassificationVerdict v = classify_uniton_type(
                    *frames, monodromy_records, config.tol.algebraic, config.tol.monodromy_trivial);
                emit("classify", to_json(v));
                results["classify"] = to_json(v);
                summary["classification"] = to_json(v);
            } else if (stage == "verify") {
                json reports = json::array();
                const double step = std::max(frames->grid.step_x, frames->grid.step_y);
                for (const auto& check : config.verify_checks) {
                    if (check == "mc") {
                        const MaurerCartanReport mc =
                            maurer_cartan_residual(*frames, {cplx(1.0), cplx(0.0, 1.0), cplx(-1.0)});
                        ResidualReport rep;
                        rep.check_name = "mc";
                        rep.per_point = mc.residual;
                        for (double r : mc.residual) rep.max_residual = std::max(rep.max_residual, r);
                        rep.tolerance = config.tol.mc_scale * step * step;
                        rep.settle();
                        if (mc.coarse_grid_warning) rep.verdict = "inconclusive";
                        reports.push_back(to_json(rep));
                    } else if (check == "reality" || check == "twist") {
                        ResidualReport rep = reality_twist_suite(*frames, config.tol.factor);
                        rep.check_name = check;
                        reports.push_back(to_json(rep));
                    } else if (check == "es") {
                        if (!embedded.has_value()) embedded = cartan_embed(*frames);
                        if (!solution.has_value()) solution = extended_solution(*frames);
                        ResidualReport rep = extended_solution_residual(
                            *solution, *embedded, unit_circle_samples(8),
                            config.tol.mc_scale * step * step);
                        reports.push_back(to_json(rep));
                    } else {
                        throw ValidationError("unknown verify check \"" + check +
                                              "\"; known: mc, reality, twist, es");
                    }
                }
                emit("verify", reports);
                results["verify"] = reports;
            }
            completed.push_back(stage);
        } catch (const Error&) {
            summary["results"] = results;
            summary["completedStages"] = completed;
            summary["failedStage"] = stage;
            const std::string path = (fs::path(config.out_dir) / "summary.json").string();
            save_json_file(path, summary);
            throw;
        }
    }
    summary["results"] = results;
    summary["completedStages"] = completed;
    result.summary = summary;
    const std::string path = (fs::path(config.out_dir) / "summary.json").string();
    save_json_file(path, summary);
    result.artifacts.push_back(path);
    return result;
}

} // namespace dpwlab
