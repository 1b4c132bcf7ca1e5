#include "quup/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quup/errors.hpp"

namespace quup::quadrature {

namespace {

struct Worker {
    const std::function<double(double)>& f;
    long max_panels;
    int max_depth;
    long panels = 0;
    double err_sum = 0.0;
    bool converged = true;

    // a < m < b with fa = f(a) etc. and S the Simpson estimate over [a, b].
    double refine(double a, double b, double fa, double fm, double fb, double S, double tol,
                  int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double Sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double Sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double S2 = Sl + Sr;
        const double err = (S2 - S) / 15.0;
        if (std::abs(err) <= tol || depth >= max_depth || panels >= max_panels) {
            if (std::abs(err) > tol) converged = false;
            panels += 2;
            err_sum += std::abs(err);
            return S2 + err;  // Richardson tail
        }
        return refine(a, m, fa, flm, fm, Sl, 0.5 * tol, depth + 1) +
               refine(m, b, fm, frm, fb, Sr, 0.5 * tol, depth + 1);
    }
};

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opt,
                 std::vector<double> breakpoints) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw DomainError("integrate: non-finite integration limits");
    if (a == b) return {};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::vector<double> pts{a, b};
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    struct Seg {
        double a, b, fa, fm, fb, S;
    };
    std::vector<Seg> segs;
    double scale = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Seg s;
        s.a = pts[i];
        s.b = pts[i + 1];
        s.fa = f(s.a);
        s.fm = f(0.5 * (s.a + s.b));
        s.fb = f(s.b);
        s.S = (s.b - s.a) / 6.0 * (s.fa + 4.0 * s.fm + s.fb);
        scale += std::abs(s.S);
        segs.push_back(s);
    }

    const double tol_total = std::max({opt.rel_tol * scale, opt.abs_tol,
                                       std::numeric_limits<double>::denorm_min()});
    const double tol_seg = tol_total / static_cast<double>(segs.size());

    Worker w{f, opt.max_panels, opt.max_depth};
    double value = 0.0;
    for (const Seg& s : segs)
        value += w.refine(s.a, s.b, s.fa, s.fm, s.fb, s.S, tol_seg, 0);

    Result r;
    r.value = sign * value;
    r.error_estimate = w.err_sum;
    r.panels = w.panels;
    r.converged = w.converged;
    return r;
}

double trapezoid(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2)
        throw DataError("trapezoid: need at least two samples");
    double sum = 0.0;
    for (size_t i = 0; i + 1 < samples.size(); ++i) {
        const auto& [s0, v0] = samples[i];
        const auto& [s1, v1] = samples[i + 1];
        if (!(s1 > s0))
            throw DataError("trapezoid: sample positions must be strictly increasing");
        if (!std::isfinite(s0) || !std::isfinite(s1) || !std::isfinite(v0) || !std::isfinite(v1))
            throw DataError("trapezoid: non-finite sample");
        sum += 0.5 * (s1 - s0) * (v0 + v1);
    }
    return sum;
}

}
