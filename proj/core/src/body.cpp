#include "latdisc/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "latdisc/numerics.hpp"

namespace latdisc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Support objective along the meridian and its theta derivatives.
struct support_objective {
    const revolution_profile* p;
    double wr, w3;

    double value(double theta) const {
        return p->rho(theta) * (wr * std::sin(theta) + w3 * std::cos(theta));
    }
    double d1(double theta) const {
        const profile_eval e = p->eval(theta);
        const double s = std::sin(theta), c = std::cos(theta);
        return wr * (e.d1 * s + e.rho * c) + w3 * (e.d1 * c - e.rho * s);
    }
    double d2(double theta) const {
        const profile_eval e = p->eval(theta);
        const double s = std::sin(theta), c = std::cos(theta);
        return wr * (e.d2 * s + 2.0 * e.d1 * c - e.rho * s) +
               w3 * (e.d2 * c - 2.0 * e.d1 * s - e.rho * c);
    }
};

}  // namespace

double body_geometry::support(double w_r, double w3) const {
    if (w_r < 0.0) throw std::invalid_argument("support: w_r must be >= 0");
    if (w_r == 0.0 && w3 == 0.0)
        throw std::invalid_argument("support: zero direction");
    const support_objective obj{&profile_, w_r, w3};
    double theta = golden_max([&](double t) { return obj.value(t); }, 0.0, kPi,
                              1e-6);
    double best = obj.value(theta);
    // Newton polish on the stationarity condition; quadratic from the 1e-6
    // bracket so <= 10 steps reach ~1e-14.
    double t = theta;
    for (int i = 0; i < 10; ++i) {
        const double g = obj.d1(t);
        const double h = obj.d2(t);
        if (h >= 0.0) break;  // not locally concave: keep golden result
        double step = g / h;
        double tn = t - step;
        if (tn < 0.0) tn = 0.0;
        if (tn > kPi) tn = kPi;
        t = tn;
        if (std::abs(step) < 1e-14) break;
    }
    best = std::max(best, obj.value(t));
    // Poles are admissible maximizers (w_r = 0); endpoints cost two evals.
    best = std::max(best, std::max(obj.value(0.0), obj.value(kPi)));
    return best;
}

double body_geometry::support3(double w1, double w2, double w3) const {
    return support(std::hypot(w1, w2), w3);
}

double body_geometry::slice_radius(double z, double xtol,
                                   double pole_snap) const {
    if (std::abs(z - z_max_) <= pole_snap || std::abs(z - z_min_) <= pole_snap)
        return 0.0;
    if (z > z_max_ || z < z_min_)
        throw std::invalid_argument("slice_radius: z outside the body");
    // axial coordinate rho(theta) cos(theta) decreases strictly on [0,pi]
    const double theta = bisect_root(
        [&](double t) { return z - profile_.rho(t) * std::cos(t); }, 0.0, kPi,
        xtol);
    return profile_.rho(theta) * std::sin(theta);
}

curvature_pair body_geometry::curvatures(double theta) const {
    constexpr double pole_eps = 1e-9;
    if (!(theta > pole_eps) || !(theta < kPi - pole_eps))
        throw std::invalid_argument("curvatures: pole evaluation rejected");
    const profile_eval e = profile_.eval(theta);
    const double expr = e.rho * e.d2 - 2.0 * e.d1 * e.d1 - e.rho * e.rho;
    const double q = e.rho * e.rho + e.d1 * e.d1;
    curvature_pair out;
    out.meridian = std::abs(expr) / (q * std::sqrt(q));
    const double s = std::sin(theta);
    const double x3_d = e.d1 * std::cos(theta) - e.rho * s;
    out.gauss = (x3_d / (e.rho * s)) * expr / (q * q);
    return out;
}

double body_geometry::gauss_curvature_pole(bool north) const {
    // limit of the interior formula as sin(theta) -> 0; rho' vanishes at the
    // poles so kappa -> (rho'' - rho)^2 / rho^4 there
    const profile_eval e = profile_.eval(north ? 0.0 : kPi);
    const double d = e.d2 - e.rho;
    return d * d / (e.rho * e.rho * e.rho * e.rho);
}

body_geometry body_geometry::analyze(const revolution_profile& p) {
    const profile_validation v = validate_profile(p);
    if (!v.accepted)
        throw std::invalid_argument("profile rejected: " + v.reason);

    body_geometry g(p);
    g.volume_ = 2.0 * kPi / 3.0 *
                adaptive_simpson(
                    [&](double t) {
                        const double r = p.rho(t);
                        return r * r * r * std::sin(t);
                    },
                    0.0, kPi, 1e-10);

    // support-radius extremes: grid scan plus local golden refinement
    const std::size_t n = 4096;
    double min_r = std::numeric_limits<double>::infinity(), min_t = 0.0;
    double max_r = -min_r, max_t = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = kPi * static_cast<double>(i) / n;
        const double r = p.rho(t);
        if (r < min_r) {
            min_r = r;
            min_t = t;
        }
        if (r > max_r) {
            max_r = r;
            max_t = t;
        }
    }
    const double h = kPi / n;
    const double t_lo = golden_max([&](double t) { return -p.rho(t); },
                                   std::max(0.0, min_t - 2 * h),
                                   std::min(kPi, min_t + 2 * h), 1e-12);
    const double t_hi = golden_max([&](double t) { return p.rho(t); },
                                   std::max(0.0, max_t - 2 * h),
                                   std::min(kPi, max_t + 2 * h), 1e-12);
    g.c1_ = std::min(min_r, p.rho(t_lo));
    g.c2_ = std::max(max_r, p.rho(t_hi));

    g.z_max_ = p.rho(0.0);
    g.z_min_ = -p.rho(kPi);
    g.rect_ = find_rect(g);
    return g;
}

freq_rect find_rect(const body_geometry& g, int max_shrink) {
    const double inv_sqrt2 = 0.70710678118654752440;
    const double hu = g.support(inv_sqrt2, inv_sqrt2);
    double lo = 0.55 / hu * inv_sqrt2;
    double hi = 1.45 / hu * inv_sqrt2;
    const auto ok = [&](double r1, double r2) {
        const double corners[4][2] = {
            {r1, r1}, {r1, r2}, {r2, r1}, {r2, r2}};
        for (const auto& c : corners) {
            const double H = g.support(c[0], c[1]);
            if (!(H >= 0.5 && H <= 1.5)) return false;
        }
        return true;
    };
    const double mid = 0.5 * (lo + hi);
    for (int i = 0; i < max_shrink; ++i) {
        if (ok(lo, hi)) return freq_rect{lo, hi, lo, hi};
        lo = mid + 0.9 * (lo - mid);
        hi = mid + 0.9 * (hi - mid);
    }
    throw std::runtime_error("find_rect: shrink budget exhausted");
}

}  // namespace latdisc
