#include "dpwlab/poly.hpp"

#include <cmath>

#include "dpwlab/errors.hpp"

namespace dpwlab {

bool Poly::is_zero() const {
    for (const auto& v : c)
        if (v != cplx(0.0)) return false;
    return true;
}

cplx Poly::eval(cplx z) const {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.c.assign(std::max(c.size(), o.c.size()), cplx(0.0));
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r;
    r.c.assign(std::max(c.size(), o.c.size()), cplx(0.0));
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (c.empty() || o.c.empty()) return Poly();
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
}

Poly Poly::scaled(cplx s) const {
    Poly r = *this;
    for (auto& v : r.c) v *= s;
    return r;
}

Poly Poly::derivative() const {
    Poly r;
    if (c.size() <= 1) return r;
    r.c.resize(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) r.c[i - 1] = double(i) * c[i];
    return r;
}

Poly Poly::antiderivative() const {
    Poly r;
    r.c.assign(c.size() + 1, cplx(0.0));
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i + 1] = c[i] / double(i + 1);
    return r;
}

void Poly::trim(double tol) {
    while (!c.empty() && std::abs(c.back()) <= tol) c.pop_back();
}

bool RationalFn::is_polynomial(double tol) const {
    Poly d = den;
    d.trim(tol);
    return d.degree() <= 0;
}

cplx RationalFn::eval(cplx z, double pole_tol) const {
    const cplx d = den.eval(z);
    if (std::abs(d) < pole_tol)
        throw PoleOnPath("denominator vanishes at z = (" + std::to_string(z.real()) + ", " +
                         std::to_string(z.imag()) + ")");
    return num.eval(z) / d;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    return RationalFn(num * o.den + o.num * den, den * o.den);
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
    if (is_zero() || o.is_zero()) return RationalFn();
    return RationalFn(num * o.num, den * o.den);
}

Mat RationalMatrix::eval(cplx z, double pole_tol) const {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = at(i, j).eval(z, pole_tol);
    return m;
}

double RationalMatrix::min_denominator_magnitude(cplx z) const {
    double s = 1e300;
    for (const auto& e : entries) s = std::min(s, e.denominator_magnitude(z));
    return s;
}

bool RationalMatrix::is_polynomial() const {
    for (const auto& e : entries)
        if (!e.is_zero() && !e.is_polynomial()) return false;
    return true;
}

} // namespace dpwlab
