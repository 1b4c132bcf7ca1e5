#include "quup/doubleslit.hpp"

#include <algorithm>
#include <cmath>

#include "quup/errors.hpp"

namespace quup::doubleslit {

void SlitGeometry::validate() const {
    if (!(s_BD > 0.0) || !std::isfinite(s_BD) || !(s_CD > 0.0) || !std::isfinite(s_CD))
        throw DomainError("SlitGeometry: path lengths must be positive and finite");
}

SlitGeometry SlitGeometry::from_screen(double slit_separation, double screen_x,
                                       double screen_distance) {
    if (!(slit_separation > 0.0) || !(screen_distance > 0.0))
        throw DomainError("SlitGeometry::from_screen: separation and distance must be positive");
    const double half = 0.5 * slit_separation;
    SlitGeometry g;
    g.s_BD = std::hypot(screen_x - half, screen_distance);
    g.s_CD = std::hypot(screen_x + half, screen_distance);
    return g;
}

double detection_probability(const BeamParticle& b, const SlitGeometry& geo) {
    geo.validate();
    const double phase = geo.delta_s() / b.lambda0;
    if (b.stable)
        return 1.0 + 1.0 + 2.0 * std::cos(phase);
    const double a_b = std::exp(-geo.s_BD / b.ell0);
    const double a_c = std::exp(-geo.s_CD / b.ell0);
    const double a_cross = std::exp(-(geo.s_BD + geo.s_CD) / (2.0 * b.ell0));
    return a_b + a_c + 2.0 * a_cross * std::cos(phase);
}

IntensityPoint intensity(const BeamParticle& b, const SlitGeometry& geo, double i0) {
    geo.validate();
    if (!(i0 > 0.0))
        throw DomainError("intensity: i0 must be positive");
    const double ds = geo.delta_s();
    const double envelope = b.stable ? 1.0 : 1.0 / std::cosh(ds / (2.0 * b.ell0));
    IntensityPoint pt;
    pt.delta_s = ds;
    pt.probability = detection_probability(b, geo);
    pt.intensity = 0.5 * i0 * (1.0 + envelope * std::cos(ds / b.lambda0));
    pt.i0 = i0;
    return pt;
}

double visibility(const BeamParticle& b, double delta_s) {
    if (b.stable) return 1.0;
    return 1.0 / std::cosh(delta_s / (2.0 * b.ell0));
}

Predictability predictability(const BeamParticle& b, const SlitGeometry& geo) {
    geo.validate();
    if (b.stable) return {0.0, 0.0};
    const double x = std::abs(geo.delta_s()) / (2.0 * b.ell0);
    Predictability p;
    // Ratio of path probabilities with the common attenuation factored out,
    // so it cannot underflow however long the paths are; expm1 keeps the
    // numerator accurate for nearly equal paths.
    const double em = std::expm1(-2.0 * x);
    p.from_ratio = -em / (2.0 + em);
    p.from_tanh = std::tanh(x);
    return p;
}

std::vector<IntensityPoint> fringe_scan(const BeamParticle& b, double delta_s_min,
                                        double delta_s_max, int n_points, double mean_path,
                                        double i0) {
    if (n_points < 2)
        throw DomainError("fringe_scan: need at least two points");
    if (!(delta_s_min < delta_s_max))
        throw DomainError("fringe_scan: inverted delta_s range");
    const double widest = std::max(std::abs(delta_s_min), std::abs(delta_s_max));
    if (!(mean_path > 0.5 * widest))
        throw DomainError("fringe_scan: mean path too short for the requested delta_s range");

    std::vector<IntensityPoint> out;
    out.reserve(static_cast<size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double ds = delta_s_min + t * (delta_s_max - delta_s_min);
        SlitGeometry geo{mean_path + 0.5 * ds, mean_path - 0.5 * ds};
        out.push_back(intensity(b, geo, i0));
    }
    return out;
}

namespace {

// Vertex of the parabola through three points; falls back to the middle
// point when the data is locally flat.
void parabola_vertex(double x0, double x1, double x2, double y0, double y1, double y2,
                     double& xv, double& yv) {
    const double d0 = x0 - x1;
    const double d2 = x2 - x1;
    // y(dx) = y1 + b*dx + a*dx^2 around x1
    const double denom = d0 * d2 * (d0 - d2);
    if (denom == 0.0) {
        xv = x1;
        yv = y1;
        return;
    }
    const double a = (d2 * (y0 - y1) - d0 * (y2 - y1)) / denom;
    const double bb = (d0 * d0 * (y2 - y1) - d2 * d2 * (y0 - y1)) / denom;
    if (a == 0.0) {
        xv = x1;
        yv = y1;
        return;
    }
    const double dxv = -0.5 * bb / a;
    xv = x1 + dxv;
    yv = y1 + bb * dxv + a * dxv * dxv;
}

}  // namespace

std::vector<Extremum> find_extrema(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw DataError("find_extrema: x/y size mismatch");
    std::vector<Extremum> out;
    for (size_t i = 1; i + 1 < x.size(); ++i) {
        const bool is_max = y[i] > y[i - 1] && y[i] > y[i + 1];
        const bool is_min = y[i] < y[i - 1] && y[i] < y[i + 1];
        if (!is_max && !is_min) continue;
        Extremum e;
        parabola_vertex(x[i - 1], x[i], x[i + 1], y[i - 1], y[i], y[i + 1], e.x, e.value);
        e.is_max = is_max;
        out.push_back(e);
    }
    return out;
}

std::vector<FringeVisibility> extract_visibilities(const std::vector<IntensityPoint>& scan) {
    std::vector<double> x, y;
    x.reserve(scan.size());
    y.reserve(scan.size());
    for (const auto& pt : scan) {
        x.push_back(pt.delta_s);
        y.push_back(pt.intensity);
    }
    const std::vector<Extremum> ext = find_extrema(x, y);

    std::vector<FringeVisibility> out;
    for (size_t i = 0; i < ext.size(); ++i) {
        if (!ext[i].is_max) continue;
        // Pair with the nearest minimum at larger |delta_s|: the next
        // extremum outward from delta_s = 0 (positive side for a maximum
        // sitting exactly at the center).
        const Extremum* min_e = nullptr;
        if (ext[i].x >= 0.0) {
            if (i + 1 < ext.size() && !ext[i + 1].is_max) min_e = &ext[i + 1];
        } else {
            if (i > 0 && !ext[i - 1].is_max) min_e = &ext[i - 1];
        }
        if (!min_e) continue;

        FringeVisibility fv;
        fv.delta_s_max = ext[i].x;
        fv.i_max = ext[i].value;
        fv.delta_s_min = min_e->x;
        // Parabolic refinement can overshoot a zero-intensity minimum by a
        // rounding-level amount; contrast is defined for i_min >= 0.
        fv.i_min = std::max(0.0, min_e->value);
        fv.visibility = (fv.i_max - fv.i_min) / (fv.i_max + fv.i_min);
        out.push_back(fv);
    }
    return out;
}

}
