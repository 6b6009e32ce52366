#include "dpwlab/io.hpp"

#include <fstream>

namespace dpwlab {

json to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(row);
    }
    return rows;
}

Mat mat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("matrix JSON must be a nonempty array");
    const int rows = int(j.size());
    const int cols = int(j[0].size());
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (int(j[r].size()) != cols) throw ValidationError("ragged matrix JSON");
        for (int c = 0; c < cols; ++c) {
            const auto& e = j[r][c];
            if (!e.is_array() || e.size() != 2)
                throw ValidationError("matrix entries must be [re, im]");
            m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

json to_json(const LaurentMatrix& a) {
    json j;
    j["n"] = a.size();
    j["lo"] = a.lo();
    j["hi"] = a.hi();
    json coeff;
    for (int d = a.lo(); d <= a.hi(); ++d) coeff[std::to_string(d)] = to_json(a.coeff(d));
    j["coeff"] = coeff;
    return j;
}

LaurentMatrix laurent_from_json(const json& j) {
    for (const char* key : {"n", "lo", "hi", "coeff"})
        if (!j.contains(key)) throw ValidationError(std::string("loop JSON missing ") + key);
    const int n = j.at("n").get<int>();
    const int lo = j.at("lo").get<int>();
    const int hi = j.at("hi").get<int>();
    LaurentMatrix a(n, lo, hi);
    for (auto it = j.at("coeff").begin(); it != j.at("coeff").end(); ++it) {
        const int d = std::stoi(it.key());
        if (d < lo || d > hi) throw ValidationError("coefficient degree outside [lo, hi]");
        const Mat m = mat_from_json(it.value());
        if (m.rows() != n || m.cols() != n) throw ValidationError("coefficient shape mismatch");
        a.set_coeff(d, m);
    }
    return a;
}

json to_json(const SymmetricSpaceSpec& s) {
    json j;
    j["n"] = s.n;
    j["h"] = s.h;
    j["realForm"] = to_string(s.form);
    if (s.form == RealForm::Indefinite) {
        j["p"] = s.p;
        j["q"] = s.q;
    }
    return j;
}

SymmetricSpaceSpec spec_from_json_value(const json& j) {
    SymmetricSpaceSpec s;
    if (!j.contains("n")) throw ValidationError("spec JSON requires n");
    s.n = j.at("n").get<int>();
    if (!j.contains("h")) throw ValidationError("spec JSON requires h");
    for (const auto& e : j.at("h")) s.h.push_back(e.get<double>());
    s.form = j.contains("realForm") ? real_form_from_string(j.at("realForm").get<std::string>())
                                    : RealForm::Compact;
    if (s.form == RealForm::Indefinite) {
        if (!j.contains("p")) throw ValidationError("indefinite spec requires p");
        s.p = j.at("p").get<int>();
        s.q = j.contains("q") ? j.at("q").get<int>() : s.n - s.p;
    }
    s.validate();
    return s;
}

namespace {

Provenance provenance_from_string(const std::string& s) {
    if (s == "fromPotential") return Provenance::FromPotential;
    if (s == "dressed") return Provenance::Dressed;
    if (s == "dualized") return Provenance::Dualized;
    if (s == "continued") return Provenance::Continued;
    throw ValidationError("unknown provenance \"" + s + "\"");
}

json grid_to_json(const GridInfo& g) {
    json j;
    j["rows"] = g.rows;
    j["cols"] = g.cols;
    j["stepX"] = g.step_x;
    j["stepY"] = g.step_y;
    j["basepointIndex"] = g.basepoint_index;
    return j;
}

GridInfo grid_from_json(const json& j, const json& samples) {
    GridInfo g;
    g.rows = j.value("rows", 0);
    g.cols = j.value("cols", 0);
    g.step_x = j.value("stepX", 0.0);
    g.step_y = j.value("stepY", 0.0);
    g.basepoint_index = j.value("basepointIndex", -1);
    for (const auto& s : samples) {
        const auto& z = s.at("z");
        g.z.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return g;
}

} // namespace

json to_json(const FrameField& f) {
    json j;
    j["spec"] = to_json(f.spec);
    j["provenance"] = to_string(f.provenance);
    j["basepointNormalized"] = f.basepoint_normalized;
    j["grid"] = grid_to_json(f.grid);
    json samples = json::array();
    for (int i = 0; i < f.count(); ++i) {
        json s;
        s["z"] = json::array({f.grid.z[i].real(), f.grid.z[i].imag()});
        s["frame"] = to_json(f.frames[i]);
        s["inCell"] = bool(f.in_cell[i]);
        if (f.tail[i] != 0.0) s["tail"] = f.tail[i];
        samples.push_back(s);
    }
    j["samples"] = samples;
    return j;
}

FrameField frame_field_from_json(const json& j) {
    FrameField f;
    f.spec = spec_from_json_value(j.at("spec"));
    f.provenance = provenance_from_string(j.value("provenance", "fromPotential"));
    f.basepoint_normalized = j.value("basepointNormalized", true);
    const auto& samples = j.at("samples");
    f.grid = grid_from_json(j.at("grid"), samples);
    for (const auto& s : samples) {
        f.frames.push_back(laurent_from_json(s.at("frame")));
        f.in_cell.push_back(s.value("inCell", true) ? 1 : 0);
        f.tail.push_back(s.value("tail", 0.0));
    }
    return f;
}

json to_json(const LoopSampleField& f) {
    json j;
    j["spec"] = to_json(f.spec);
    j["grid"] = grid_to_json(f.grid);
    json samples = json::array();
    for (int i = 0; i < f.grid.count(); ++i) {
        json s;
        s["z"] = json::array({f.grid.z[i].real(), f.grid.z[i].imag()});
        s["value"] = to_json(f.samples[i]);
        s["valid"] = bool(f.valid[i]);
        samples.push_back(s);
    }
    j["samples"] = samples;
    return j;
}

LoopSampleField sample_field_from_json(const json& j) {
    LoopSampleField f;
    f.spec = spec_from_json_value(j.at("spec"));
    const auto& samples = j.at("samples");
    f.grid = grid_from_json(j.at("grid"), samples);
    for (const auto& s : samples) {
        f.samples.push_back(laurent_from_json(s.at("value")));
        f.valid.push_back(s.value("valid", true) ? 1 : 0);
    }
    f.tail.assign(f.grid.count(), 0.0);
    return f;
}

json to_json(const MonodromyRecord& r) {
    json j;
    j["pathLabel"] = r.path_label;
    json lam = json::array();
    for (const auto& l : r.lambdas) lam.push_back(json::array({l.real(), l.imag()}));
    j["lambdas"] = lam;
    json chi = json::array();
    for (const auto& m : r.chi) chi.push_back(to_json(m));
    j["chi"] = chi;
    j["maxDeviation"] = r.max_deviation;
    j["realFormResidual"] = r.real_form_residual;
    return j;
}

MonodromyRecord monodromy_record_from_json(const json& j) {
    MonodromyRecord r;
    r.path_label = j.value("pathLabel", "");
    for (const auto& l : j.at("lambdas")) r.lambdas.emplace_back(l[0].get<double>(), l[1].get<double>());
    for (const auto& m : j.at("chi")) r.chi.push_back(mat_from_json(m));
    r.max_deviation = j.value("maxDeviation", 0.0);
    r.real_form_residual = j.value("realFormResidual", 0.0);
    return r;
}

json to_json(const BirkhoffResult& r) {
    json j;
    j["minus"] = to_json(r.minus);
    j["plus"] = to_json(r.plus);
    j["residual"] = r.residual;
    return j;
}

json to_json(const IwasawaResult& r) {
    json j;
    j["cell"] = r.cell == CellFlag::IdentityCell ? "identityCell" : "outsideCell";
    if (r.cell == CellFlag::IdentityCell) {
        j["unitaryPart"] = to_json(r.unitary_part);
        j["plusPart"] = to_json(r.plus_part);
        j["reconstructionResidual"] = r.reconstruction_residual;
        j["realityResidual"] = r.reality_residual;
    }
    return j;
}

json to_json(const ResidualReport& r) {
    json j;
    j["checkName"] = r.check_name;
    j["maxResidual"] = r.max_residual;
    if (!r.per_point.empty()) j["perPoint"] = r.per_point;
    if (r.convergence_order.has_value()) j["convergenceOrder"] = *r.convergence_order;
    j["tolerance"] = r.tolerance;
    j["verdict"] = r.verdict;
    return j;
}

json to_json(const ClassificationVerdict& v) {
    json j;
    j["algebraic"] = v.algebraic;
    j["totallySymmetric"] = v.totally_symmetric;
    j["finiteUnitonType"] = v.finite_uniton_type;
    return j;
}

json to_json(const UnitonCertificate& c) {
    json j;
    j["unitonNumber"] = c.number;
    j["attainingIndex"] = c.attaining_index;
    j["attainingZ"] = json::array({c.attaining_z.real(), c.attaining_z.imag()});
    j["note"] = c.note;
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(e.what()) + " in " + path);
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace dpwlab
