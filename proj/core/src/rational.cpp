#include "dpwlab/rational.hpp"

#include <cmath>

#include "dpwlab/errors.hpp"

namespace dpwlab {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite value cannot enter rational mode");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    const double mant = std::frexp(x, &exp); // x = mant * 2^exp, 0.5 <= |mant| < 1
    const long long m = (long long)std::ldexp(mant, 53);
    exp -= 53;
    boost::multiprecision::cpp_int num = m;
    boost::multiprecision::cpp_int den = 1;
    if (exp >= 0)
        num <<= exp;
    else
        den <<= -exp;
    return Rational(num, den);
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

bool RatPoly::is_zero() const {
    for (const auto& v : c)
        if (!v.is_zero()) return false;
    return true;
}

CRational RatPoly::eval(const CRational& z) const {
    CRational acc;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    RatPoly r;
    r.c.assign(std::max(c.size(), o.c.size()), CRational());
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
    return r;
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    RatPoly r;
    if (c.empty() || o.c.empty()) return r;
    r.c.assign(c.size() + o.c.size() - 1, CRational());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
    return r;
}

RatPoly RatPoly::antiderivative() const {
    RatPoly r;
    r.c.assign(c.size() + 1, CRational());
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i + 1] = c[i].scaled(Rational(1, long(i + 1)));
    return r;
}

void RatPoly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

RatPolyMatrix RatPolyMatrix::identity(int n_) {
    RatPolyMatrix m(n_);
    for (int i = 0; i < n_; ++i) m.at(i, i).c = {CRational(Rational(1), Rational(0))};
    return m;
}

bool RatPolyMatrix::is_zero() const {
    for (const auto& e : entries)
        if (!e.is_zero()) return false;
    return true;
}

RatPolyMatrix RatPolyMatrix::operator+(const RatPolyMatrix& o) const {
    RatPolyMatrix r(n);
    for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] + o.entries[i];
    return r;
}

RatPolyMatrix RatPolyMatrix::operator*(const RatPolyMatrix& o) const {
    RatPolyMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        }
    return r;
}

RatPolyMatrix RatPolyMatrix::antiderivative() const {
    RatPolyMatrix r(n);
    for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i].antiderivative();
    return r;
}

Mat RatPolyMatrix::eval_double(cplx z) const {
    const CRational zr(z);
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = at(i, j).eval(zr).to_cplx();
    return m;
}

} // namespace dpwlab
