#pragma once

#include <vector>

#include "quup/beam.hpp"

namespace quup::doubleslit {

/// Two-slit geometry reduced to the two slit-to-detector path lengths.  The
/// source-to-slit arms are taken equal, so only s_BD - s_CD matters.
struct SlitGeometry {
    double s_BD = 0.0;  // slit B -> detector [m]
    double s_CD = 0.0;  // slit C -> detector [m]
    bool equal_source_arms = true;

    double delta_s() const { return s_BD - s_CD; }
    void validate() const;

    /// Exact two-point geometry helper: slits at x = +-d/2 in the z = 0
    /// plane (B at +d/2), detector at (x, L).  No small-angle approximation.
    static SlitGeometry from_screen(double slit_separation, double screen_x,
                                    double screen_distance);
};

struct IntensityPoint {
    double delta_s = 0.0;
    double probability = 0.0;  // unnormalized two-path detection probability, P0 = 1
    double intensity = 0.0;    // in [0, i0]
    double i0 = 1.0;           // intensity at delta_s = 0
};

/// Unnormalized detection probability of the coherent two-path sum with unit
/// source constant:
///   exp(-s_BD/ell0) + exp(-s_CD/ell0)
///     + 2 exp(-(s_BD+s_CD)/2 ell0) cos(delta_s/lambda0).
double detection_probability(const BeamParticle& b, const SlitGeometry& geo);

/// Normalized intensity (i0/2) [1 + sech(delta_s/2 ell0) cos(delta_s/lambda0)];
/// the sech factor is exactly 1 for stable beams.
IntensityPoint intensity(const BeamParticle& b, const SlitGeometry& geo, double i0);

/// Fringe visibility sech(delta_s / 2 ell0); 1 for stable beams.
double visibility(const BeamParticle& b, double delta_s);

/// Path predictability by two routes that must agree: the probability-ratio
/// form |(exp(-s_CD/ell0) - exp(-s_BD/ell0)) / (sum)| and the closed form
/// tanh(|delta_s|/2 ell0).  The ratio route factors out the common
/// attenuation, so it stays exact where the raw exponentials underflow.
struct Predictability {
    double from_ratio = 0.0;
    double from_tanh = 0.0;
};
Predictability predictability(const BeamParticle& b, const SlitGeometry& geo);

/// Uniform delta_s sweep holding the mean path (s_BD+s_CD)/2 fixed.
std::vector<IntensityPoint> fringe_scan(const BeamParticle& b, double delta_s_min,
                                        double delta_s_max, int n_points,
                                        double mean_path, double i0 = 1.0);

/// An interior extremum of a scan, refined by a 3-point parabola.
struct Extremum {
    double x = 0.0;
    double value = 0.0;
    bool is_max = false;
};
std::vector<Extremum> find_extrema(const std::vector<double>& x,
                                   const std::vector<double>& y);

/// One fringe's contrast: a refined interior maximum paired with the nearest
/// refined minimum at larger |delta_s|.
struct FringeVisibility {
    double delta_s_max = 0.0;
    double i_max = 0.0;
    double delta_s_min = 0.0;
    double i_min = 0.0;
    double visibility = 0.0;  // (i_max - i_min)/(i_max + i_min)
};
std::vector<FringeVisibility> extract_visibilities(const std::vector<IntensityPoint>& scan);

}
