#include "dpwlab/symmetric_space.hpp"

#include <cmath>

namespace dpwlab {

std::string to_string(RealForm f) {
    switch (f) {
        case RealForm::Compact: return "compact";
        case RealForm::Indefinite: return "indefinite";
        case RealForm::Complexified: return "complexified";
    }
    return "unknown";
}

RealForm real_form_from_string(const std::string& s) {
    if (s == "compact") return RealForm::Compact;
    if (s == "indefinite") return RealForm::Indefinite;
    if (s == "complexified") return RealForm::Complexified;
    throw ValidationError("unknown real form \"" + s +
                          "\"; supported forms: compact, indefinite, complexified");
}

SymmetricSpaceSpec SymmetricSpaceSpec::su(int n, std::vector<double> h) {
    SymmetricSpaceSpec s;
    s.n = n;
    s.h = std::move(h);
    s.form = RealForm::Compact;
    s.validate();
    return s;
}

SymmetricSpaceSpec SymmetricSpaceSpec::su_pq(int p, int q, std::vector<double> h) {
    SymmetricSpaceSpec s;
    s.n = p + q;
    s.h = std::move(h);
    s.form = RealForm::Indefinite;
    s.p = p;
    s.q = q;
    s.validate();
    return s;
}

void SymmetricSpaceSpec::validate() const {
    if (n < 1) throw ValidationError("spec requires n >= 1");
    if (int(h.size()) != n) throw ValidationError("h diagonal length must equal n");
    for (double v : h)
        if (v != 1.0 && v != -1.0) throw ValidationError("h entries must be +1 or -1");
    if (form == RealForm::Indefinite) {
        if (p < 0 || q < 0 || p + q != n)
            throw ValidationError("indefinite form requires p + q = n with p, q >= 0");
    }
}

std::vector<double> SymmetricSpaceSpec::j_diagonal() const {
    std::vector<double> j(n, 1.0);
    if (form == RealForm::Indefinite)
        for (int i = p; i < n; ++i) j[i] = -1.0;
    return j;
}

Mat SymmetricSpaceSpec::h_matrix() const {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = h[i];
    return m;
}

Mat SymmetricSpaceSpec::j_matrix() const {
    const auto j = j_diagonal();
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = j[i];
    return m;
}

Mat SymmetricSpaceSpec::project_k(const Mat& m) const {
    Mat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int jc = 0; jc < n; ++jc)
            if (h[i] == h[jc]) out(i, jc) = m(i, jc);
    return out;
}

Mat SymmetricSpaceSpec::project_p(const Mat& m) const {
    Mat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int jc = 0; jc < n; ++jc)
            if (h[i] != h[jc]) out(i, jc) = m(i, jc);
    return out;
}

double SymmetricSpaceSpec::k_residual(const Mat& m) const { return project_p(m).frobenius_norm(); }

double SymmetricSpaceSpec::p_residual(const Mat& m) const { return project_k(m).frobenius_norm(); }

SymmetricSpaceSpec SymmetricSpaceSpec::compact_dual() const {
    SymmetricSpaceSpec s = *this;
    s.form = RealForm::Compact;
    s.p = s.q = 0;
    return s;
}

bool SymmetricSpaceSpec::operator==(const SymmetricSpaceSpec& o) const {
    return n == o.n && h == o.h && form == o.form && p == o.p && q == o.q;
}

} // namespace dpwlab
