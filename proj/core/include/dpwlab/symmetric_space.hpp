#pragma once

#include <string>
#include <vector>

#include "dpwlab/complexmat.hpp"

namespace dpwlab {

enum class RealForm { Compact, Indefinite, Complexified };

std::string to_string(RealForm f);
RealForm real_form_from_string(const std::string& s);

// The data defining an inner symmetric space G/K at matrix level: the size n,
// the involution sigma = Ad(h) with h a +-1 diagonal, and the real form
// (compact special-unitary, indefinite special-unitary w.r.t. J, or none).
struct SymmetricSpaceSpec {
    int n = 0;
    std::vector<double> h;     // +-1 entries, h^2 = id
    RealForm form = RealForm::Compact;
    int p = 0, q = 0;          // signature for the indefinite form, p + q = n

    static SymmetricSpaceSpec su(int n, std::vector<double> h);
    static SymmetricSpaceSpec su_pq(int p, int q, std::vector<double> h);

    void validate() const;

    std::vector<double> j_diagonal() const; // identity for compact
    Mat h_matrix() const;
    Mat j_matrix() const;

    // h-parity projections: k commutes with h, p anti-commutes.
    Mat project_k(const Mat& m) const;
    Mat project_p(const Mat& m) const;
    double k_residual(const Mat& m) const; // distance of m from k^C
    double p_residual(const Mat& m) const; // distance of m from p^C

    SymmetricSpaceSpec compact_dual() const;

    bool operator==(const SymmetricSpaceSpec& o) const;
};

} // namespace dpwlab
