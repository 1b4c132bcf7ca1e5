#pragma once

namespace quup::duality {

/// A (visibility, predictability) pair and its duality residual
/// V^2 + P^2 - 1.  The residual is reported signed, never clipped; for a
/// coherent two-path system it vanishes, and a positive residual beyond
/// tolerance signals a computational error, not physics.
struct DualityResult {
    double visibility = 0.0;
    double predictability = 0.0;
    double residual = 0.0;
    bool coherent = false;   // |residual| <= tolerance
    bool violation = false;  // residual > tolerance
};

/// (i_max - i_min)/(i_max + i_min) from adjoining extrema.
double visibility_from_extrema(double i_max, double i_min);

/// |p1 - p2|/(p1 + p2); scale-invariant, so p1 + p2 < 1 is fine.
double predictability_from_probs(double p1, double p2);

DualityResult duality_check(double visibility, double predictability,
                            double tolerance = 1e-9);

}
