#include "dpwlab/frame_field.hpp"

#include <cmath>

#include "dpwlab/errors.hpp"

namespace dpwlab {

GridInfo GridSpec::build(cplx basepoint) const {
    GridInfo g;
    if (!points.empty()) {
        g.z = points;
        g.rows = g.cols = 0;
    } else {
        if (steps < 2) throw ValidationError("grid needs at least 2 steps per side");
        if (radius <= 0.0) throw ValidationError("grid radius must be positive");
        g.rows = g.cols = steps;
        g.step_x = g.step_y = 2.0 * radius / double(steps - 1);
        g.z.reserve(std::size_t(steps) * steps);
        for (int r = 0; r < steps; ++r)
            for (int c = 0; c < steps; ++c) {
                const double x = center.real() - radius + g.step_x * c;
                const double y = center.imag() - radius + g.step_y * r;
                g.z.emplace_back(x, y);
            }
    }
    double best = 1e300;
    for (int i = 0; i < g.count(); ++i) {
        const double d = std::abs(g.z[i] - basepoint);
        if (d < best) {
            best = d;
            g.basepoint_index = i;
        }
    }
    if (best > 1e-9) g.basepoint_index = -1; // basepoint not a grid sample
    return g;
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::FromPotential: return "fromPotential";
        case Provenance::Dressed: return "dressed";
        case Provenance::Dualized: return "dualized";
        case Provenance::Continued: return "continued";
    }
    return "unknown";
}

bool FrameField::all_in_cell() const {
    for (char c : in_cell)
        if (!c) return false;
    return true;
}

double FrameField::max_tail() const {
    double s = 0.0;
    for (double t : tail) s = std::max(s, t);
    return s;
}

std::vector<cplx> unit_circle_samples(int m) {
    std::vector<cplx> out;
    out.reserve(m);
    for (int k = 0; k < m; ++k) {
        const double t = 2.0 * M_PI * k / m;
        out.emplace_back(std::cos(t), std::sin(t));
    }
    return out;
}

} // namespace dpwlab
