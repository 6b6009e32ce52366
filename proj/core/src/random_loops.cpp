#include "dpwlab/random_loops.hpp"

#include <algorithm>
#include <cmath>

namespace dpwlab {

namespace {

std::vector<std::pair<int, int>> pairs_by_parity(const SymmetricSpaceSpec& spec, bool odd,
                                                 bool lower_only) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.n; ++j) {
            if (i == j) continue;
            if (lower_only && i < j) continue;
            const bool pair_odd = spec.h[i] != spec.h[j];
            if (pair_odd == odd) out.emplace_back(i, j);
        }
    return out;
}

} // namespace

LaurentMatrix random_twisted_loop(const SymmetricSpaceSpec& spec, std::mt19937& rng, int factors,
                                  double scale, int max_power) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto odd_pairs = pairs_by_parity(spec, true, false);
    const auto even_pairs = pairs_by_parity(spec, false, false);
    LaurentMatrix out = LaurentMatrix::identity(spec.n);
    for (int f = 0; f < factors; ++f) {
        std::vector<int> powers;
        for (int p = -max_power; p <= max_power; ++p) powers.push_back(p);
        std::shuffle(powers.begin(), powers.end(), rng);
        for (int p : powers) {
            const bool odd = ((p % 2) + 2) % 2 == 1;
            const auto& pool = odd ? odd_pairs : even_pairs;
            if (pool.empty()) continue;
            const auto [i, j] = pool[std::uniform_int_distribution<int>(0, int(pool.size()) - 1)(rng)];
            const cplx c(scale * u(rng), scale * u(rng));
            out = multiply(out, LaurentMatrix::elementary(spec.n, p, i, j, c));
            break;
        }
    }
    return out;
}

LaurentMatrix random_real_loop(const SymmetricSpaceSpec& spec, std::mt19937& rng, int factors,
                               double scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto odd_pairs = pairs_by_parity(spec, true, false);
    LaurentMatrix out = LaurentMatrix::identity(spec.n);
    if (odd_pairs.empty()) return out;
    for (int f = 0; f < factors; ++f) {
        auto [i, j] = odd_pairs[std::uniform_int_distribution<int>(0, int(odd_pairs.size()) - 1)(rng)];
        if (i > j) std::swap(i, j);
        const cplx w(scale * u(rng), scale * u(rng));
        const double s = std::sqrt(1.0 + std::norm(w));
        LaurentMatrix r(spec.n, -1, 1);
        Mat c0 = Mat::identity(spec.n);
        c0(i, i) = 1.0 / s;
        c0(j, j) = 1.0 / s;
        r.set_coeff(0, c0);
        Mat cm(spec.n, spec.n);
        cm(i, j) = w / s;
        r.set_coeff(-1, cm);
        Mat cp(spec.n, spec.n);
        cp(j, i) = -std::conj(w) / s;
        r.set_coeff(1, cp);
        out = multiply(out, r);
    }
    return out;
}

LaurentMatrix random_plus_loop(const SymmetricSpaceSpec& spec, std::mt19937& rng, int hi,
                               double scale, bool pointwise_lower) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // positive diagonal with det 1
    std::vector<cplx> d(spec.n, 1.0);
    double sum = 0.0;
    for (int i = 0; i + 1 < spec.n; ++i) {
        const double a = 0.5 * scale * u(rng);
        d[i] = std::exp(a);
        sum += a;
    }
    d[spec.n - 1] = std::exp(-sum);
    LaurentMatrix out = LaurentMatrix::constant(Mat::diag(d));
    for (int p = 1; p <= hi; ++p) {
        const bool odd = p % 2 == 1;
        const auto pool = pairs_by_parity(spec, odd, pointwise_lower);
        if (pool.empty()) continue;
        const auto [i, j] = pool[std::uniform_int_distribution<int>(0, int(pool.size()) - 1)(rng)];
        const cplx c(scale * u(rng), scale * u(rng));
        out = multiply(out, LaurentMatrix::elementary(spec.n, p, i, j, c));
    }
    return out;
}

Mat random_k_element(const SymmetricSpaceSpec& spec, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat k(spec.n, spec.n);
    for (double sign : {1.0, -1.0}) {
        std::vector<int> idx;
        for (int i = 0; i < spec.n; ++i)
            if (spec.h[i] == sign) idx.push_back(i);
        if (idx.empty()) continue;
        const int m = int(idx.size());
        Mat block(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) block(r, c) = cplx(g(rng), g(rng));
        const Mat q = ql_decompose(block).q;
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) k(idx[r], idx[c]) = q(r, c);
    }
    const cplx det = determinant(k);
    // scale one column into det = 1 (|det| = 1 already)
    int col = 0;
    for (int i = 0; i < spec.n; ++i) k(i, col) /= det;
    return k;
}

} // namespace dpwlab
