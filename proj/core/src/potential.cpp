#include "dpwlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace dpwlab {

using json = nlohmann::ordered_json;

std::string to_string(PotentialKind k) {
    return k == PotentialKind::Normalized ? "normalized" : "holomorphic";
}

int Potential::min_power() const {
    int m = 0;
    bool first = true;
    for (const auto& t : terms) {
        m = first ? t.power : std::min(m, t.power);
        first = false;
    }
    return m;
}

int Potential::max_power() const {
    int m = 0;
    bool first = true;
    for (const auto& t : terms) {
        m = first ? t.power : std::max(m, t.power);
        first = false;
    }
    return m;
}

LaurentMatrix Potential::eval(cplx z, double pole_tol) const {
    LaurentMatrix a(spec.n, std::min(min_power(), 0), std::max(max_power(), 0));
    for (const auto& t : terms) a.coeff_mut(t.power) += t.matrix.eval(z, pole_tol);
    return a;
}

double Potential::min_denominator_magnitude(cplx z) const {
    double s = 1e300;
    for (const auto& t : terms) s = std::min(s, t.matrix.min_denominator_magnitude(z));
    return s;
}

void Potential::validate(int samples) const {
    spec.validate();
    if (terms.empty()) throw ValidationError("potential has no terms");
    if (kind == PotentialKind::Normalized) {
        if (terms.size() != 1 || terms[0].power != -1)
            throw ValidationError(
                "normalized potential requires exactly one term at power -1");
    }
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (terms[k].power < -1)
            throw ValidationError("term #" + std::to_string(k) + " has power " +
                                  std::to_string(terms[k].power) + "; powers >= -1");
        if (terms[k].matrix.n != spec.n)
            throw ValidationError("term #" + std::to_string(k) + " matrix size mismatch");
    }
    std::mt19937 rng(20240901u);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int s = 0; s < samples; ++s) {
        const cplx z = basepoint + cplx(u(rng), u(rng));
        for (std::size_t k = 0; k < terms.size(); ++k) {
            Mat m;
            try {
                m = terms[k].matrix.eval(z);
            } catch (const PoleOnPath&) {
                continue; // sample hit a pole; parity is checked elsewhere
            }
            const bool odd = ((terms[k].power % 2) + 2) % 2 == 1;
            const double res = odd ? spec.p_residual(m) : spec.k_residual(m);
            const double scale = 1.0 + m.frobenius_norm();
            if (res > 1e-9 * scale) {
                std::ostringstream os;
                os << "term #" << k << " (power " << terms[k].power << ") is not "
                   << (odd ? "p" : "k") << "^C-valued at sample z = (" << z.real() << ", "
                   << z.imag() << "), residual " << res;
                throw ValidationError(os.str());
            }
        }
    }
}

bool Potential::is_nilpotent_upper(const std::vector<int>& block_sizes) const {
    std::vector<int> block_of(spec.n, 0);
    if (block_sizes.empty()) {
        for (int i = 0; i < spec.n; ++i) block_of[i] = i;
    } else {
        int idx = 0, b = 0;
        for (int sz : block_sizes) {
            for (int t = 0; t < sz && idx < spec.n; ++t) block_of[idx++] = b;
            ++b;
        }
        if (idx != spec.n) return false;
    }
    for (const auto& t : terms)
        for (int i = 0; i < spec.n; ++i)
            for (int j = 0; j < spec.n; ++j) {
                if (block_of[i] < block_of[j]) continue; // allowed strictly-upper block
                Poly num = t.matrix.at(i, j).num;
                num.trim(0.0);
                if (!num.is_zero()) return false;
            }
    return true;
}

bool Potential::is_polynomial() const {
    for (const auto& t : terms)
        if (!t.matrix.is_polynomial()) return false;
    return true;
}

namespace {

void line_col_of(const std::string& text, std::size_t byte, int& line, int& col) {
    line = 1;
    col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

cplx parse_complex_value(const json& v, const std::string& where) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_string()) {
        try {
            std::size_t pos = 0;
            const double d = std::stod(v.get<std::string>(), &pos);
            if (pos != v.get<std::string>().size()) throw std::invalid_argument("trailing");
            return cplx(d, 0.0);
        } catch (const std::exception&) {
            throw ValidationError(where + ": cannot parse \"" + v.get<std::string>() +
                                  "\" as a number");
        }
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cplx(v[0].get<double>(), v[1].get<double>());
    throw ValidationError(where + ": expected number, numeric string, or [re, im]");
}

// Inside num/den a plain array is always a coefficient list; at matrix-entry
// level a bare two-number array is the complex constant [re, im].
Poly parse_poly(const json& v, const std::string& where, bool pair_is_complex) {
    Poly p;
    if (!v.is_array()) {
        p.c = {parse_complex_value(v, where)};
        return p;
    }
    if (pair_is_complex && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        p.c = {cplx(v[0].get<double>(), v[1].get<double>())};
        return p;
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        p.c.push_back(parse_complex_value(v[i], where + "[" + std::to_string(i) + "]"));
    return p;
}

RationalFn parse_entry(const json& v, const std::string& where) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            if (it.key() != "num" && it.key() != "den")
                throw ValidationError(where + ": unknown key \"" + it.key() + "\"");
        if (!v.contains("num")) throw ValidationError(where + ": rational entry requires num");
        Poly num = parse_poly(v.at("num"), where + ".num", false);
        Poly den = v.contains("den") ? parse_poly(v.at("den"), where + ".den", false) : Poly::one();
        den.trim(0.0);
        if (den.is_zero()) throw ValidationError(where + ": zero denominator");
        return RationalFn(num, den);
    }
    return RationalFn(parse_poly(v, where, true));
}

PotentialTerm parse_term(const json& v, int n, std::size_t index) {
    const std::string where = "term #" + std::to_string(index);
    if (!v.is_object()) throw ValidationError(where + ": expected an object");
    for (auto it = v.begin(); it != v.end(); ++it)
        if (it.key() != "power" && it.key() != "matrix")
            throw ValidationError(where + ": unknown key \"" + it.key() + "\"");
    if (!v.contains("power") || !v.at("power").is_number_integer())
        throw ValidationError(where + ": integer power required");
    if (!v.contains("matrix") || !v.at("matrix").is_array())
        throw ValidationError(where + ": matrix required");
    PotentialTerm t;
    t.power = v.at("power").get<int>();
    const auto& m = v.at("matrix");
    if (int(m.size()) != n) throw ValidationError(where + ": matrix must have n rows");
    t.matrix = RationalMatrix(n);
    for (int i = 0; i < n; ++i) {
        if (!m[i].is_array() || int(m[i].size()) != n)
            throw ValidationError(where + ": matrix row " + std::to_string(i) +
                                  " must have n entries");
        for (int j = 0; j < n; ++j)
            t.matrix.at(i, j) = parse_entry(
                m[i][j], where + ".matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return t;
}

SymmetricSpaceSpec spec_from_json(const json& v) {
    SymmetricSpaceSpec s;
    if (!v.contains("n") || !v.at("n").is_number_integer())
        throw ValidationError("spec requires integer n");
    s.n = v.at("n").get<int>();
    if (!v.contains("h") || !v.at("h").is_array())
        throw ValidationError("spec requires the twist diagonal h");
    for (const auto& e : v.at("h")) s.h.push_back(e.get<double>());
    s.form = v.contains("realForm") ? real_form_from_string(v.at("realForm").get<std::string>())
                                    : RealForm::Compact;
    if (s.form == RealForm::Indefinite) {
        if (!v.contains("p")) throw ValidationError("indefinite form requires p");
        s.p = v.at("p").get<int>();
        s.q = v.contains("q") ? v.at("q").get<int>() : s.n - s.p;
    }
    s.validate();
    return s;
}

Potential potential_from_json(const json& j) {
    static const char* known[] = {"n",    "h",     "realForm", "p",     "q",
                                  "basepoint", "kind", "terms",    "term",  "power",
                                  "matrix"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ValidationError("unknown key \"" + it.key() + "\" in potential file");
    }
    Potential eta;
    eta.spec = spec_from_json(j);
    if (j.contains("basepoint")) eta.basepoint = parse_complex_value(j.at("basepoint"), "basepoint");
    if (j.contains("terms")) {
        if (!j.at("terms").is_array()) throw ValidationError("terms must be an array");
        for (std::size_t k = 0; k < j.at("terms").size(); ++k)
            eta.terms.push_back(parse_term(j.at("terms")[k], eta.spec.n, k));
    } else if (j.contains("term")) {
        eta.terms.push_back(parse_term(j.at("term"), eta.spec.n, 0));
    } else if (j.contains("power") && j.contains("matrix")) {
        json t;
        t["power"] = j.at("power");
        t["matrix"] = j.at("matrix");
        eta.terms.push_back(parse_term(t, eta.spec.n, 0));
    } else {
        throw ValidationError("potential file has no terms");
    }
    if (j.contains("kind")) {
        const std::string k = j.at("kind").get<std::string>();
        if (k == "normalized")
            eta.kind = PotentialKind::Normalized;
        else if (k == "holomorphic")
            eta.kind = PotentialKind::Holomorphic;
        else
            throw ValidationError("unknown potential kind \"" + k + "\"");
    } else {
        eta.kind = (eta.terms.size() == 1 && eta.terms[0].power == -1)
                       ? PotentialKind::Normalized
                       : PotentialKind::Holomorphic;
    }
    eta.validate();
    return eta;
}

} // namespace

Potential parse_potential(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        int line = 0, col = 0;
        line_col_of(text, e.byte > 0 ? e.byte - 1 : 0, line, col);
        throw ParseError(e.what(), line, col);
    }
    return potential_from_json(j);
}

Potential load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open potential file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_potential(ss.str());
}

namespace {

json rational_fn_to_json(const RationalFn& f) {
    auto poly_to_json = [](const Poly& p) {
        json a = json::array();
        for (const auto& c : p.c) a.push_back(json::array({c.real(), c.imag()}));
        return a;
    };
    if (f.is_polynomial() && !f.den.c.empty() && f.den.c[0] == cplx(1.0) && f.den.c.size() == 1) {
        if (f.num.c.size() <= 1) {
            const cplx v = f.num.c.empty() ? cplx(0.0) : f.num.c[0];
            return json::array({v.real(), v.imag()});
        }
    }
    json r;
    r["num"] = poly_to_json(f.num);
    r["den"] = poly_to_json(f.den);
    return r;
}

} // namespace

std::string potential_to_json_text(const Potential& eta) {
    json j;
    j["n"] = eta.spec.n;
    j["h"] = eta.spec.h;
    j["realForm"] = to_string(eta.spec.form);
    if (eta.spec.form == RealForm::Indefinite) {
        j["p"] = eta.spec.p;
        j["q"] = eta.spec.q;
    }
    j["basepoint"] = json::array({eta.basepoint.real(), eta.basepoint.imag()});
    j["kind"] = to_string(eta.kind);
    j["terms"] = json::array();
    for (const auto& t : eta.terms) {
        json tj;
        tj["power"] = t.power;
        json m = json::array();
        for (int i = 0; i < t.matrix.n; ++i) {
            json row = json::array();
            for (int jc = 0; jc < t.matrix.n; ++jc) row.push_back(rational_fn_to_json(t.matrix.at(i, jc)));
            m.push_back(row);
        }
        tj["matrix"] = m;
        j["terms"].push_back(tj);
    }
    return j.dump(2);
}

} // namespace dpwlab
