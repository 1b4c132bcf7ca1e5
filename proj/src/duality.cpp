#include "quup/duality.hpp"

#include <cmath>

#include "quup/errors.hpp"

namespace quup::duality {

double visibility_from_extrema(double i_max, double i_min) {
    if (!std::isfinite(i_max) || !std::isfinite(i_min))
        throw DomainError("visibility_from_extrema: non-finite intensity");
    if (i_min < 0.0 || i_min > i_max)
        throw DomainError("visibility_from_extrema: need i_max >= i_min >= 0");
    if (i_max == 0.0)
        throw DomainError("visibility_from_extrema: both intensities are zero");
    return (i_max - i_min) / (i_max + i_min);
}

double predictability_from_probs(double p1, double p2) {
    if (!std::isfinite(p1) || !std::isfinite(p2) || p1 < 0.0 || p2 < 0.0)
        throw DomainError("predictability_from_probs: probabilities must be finite and >= 0");
    if (p1 + p2 == 0.0)
        throw DomainError("predictability_from_probs: no particle reaches the detector");
    return std::abs(p1 - p2) / (p1 + p2);
}

DualityResult duality_check(double visibility, double predictability, double tolerance) {
    if (!(visibility >= 0.0 && visibility <= 1.0))
        throw DomainError("duality_check: visibility outside [0, 1]");
    if (!(predictability >= 0.0 && predictability <= 1.0))
        throw DomainError("duality_check: predictability outside [0, 1]");
    DualityResult r;
    r.visibility = visibility;
    r.predictability = predictability;
    r.residual = visibility * visibility + predictability * predictability - 1.0;
    r.coherent = std::abs(r.residual) <= tolerance;
    r.violation = r.residual > tolerance;
    return r;
}

}
