#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace quup::quadrature {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute, accumulated over panels
    long panels = 0;
    bool converged = true;
};

struct Options {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;        // floor; effective tolerance = max(rel_tol*scale, abs_tol)
    long max_panels = 1 << 20;
    int max_depth = 48;
};

/// Adaptive Simpson integration of f over [a, b].  Interval halving with the
/// usual |S_half - S_whole|/15 error estimate; the panel budget bounds total
/// work and refinement stops deterministically.  `breakpoints` pre-splits the
/// range where the integrand changes character (e.g. packet arrival windows).
/// Never throws on non-convergence: the Result carries converged = false and
/// the achieved error estimate.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {}, std::vector<double> breakpoints = {});

/// Composite trapezoid over tabulated (s, f) samples, s strictly increasing.
double trapezoid(const std::vector<std::pair<double, double>>& samples);

}
