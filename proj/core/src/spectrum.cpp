#include "latdisc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latdisc/numerics.hpp"

namespace latdisc {

namespace {
constexpr double kPi = 3.14159265358979323846;

// boundary normal direction (sqrt(l), 0, m3): product curvature there
double class_gauss_curvature(const body_geometry& g, std::int64_t ell,
                             std::int64_t m3) {
    if (ell == 0) return g.gauss_curvature_pole(m3 > 0);
    const double wr = std::sqrt(static_cast<double>(ell));
    const double w3 = static_cast<double>(m3);
    // the support maximizer is the boundary point with this outward normal;
    // recover theta* by a dedicated golden pass (support() keeps it private)
    const auto val = [&](double th) {
        return g.profile().rho(th) *
               (wr * std::sin(th) + w3 * std::cos(th));
    };
    const double th = golden_max(val, 0.0, kPi, 1e-10);
    return g.curvatures(std::min(kPi - 1e-8, std::max(1e-8, th))).gauss;
}

}  // namespace

spectral_series build_series(const body_geometry& g, const arith_tables& tab,
                             double t, coeff_model model, double eps0) {
    if (!(t >= 3.0)) throw std::invalid_argument("build_series: t >= 3");
    if (!(eps0 > 0.0) || !(eps0 < 0.75))
        throw std::invalid_argument("build_series: eps0 in (0, 0.75)");
    spectral_series s;
    s.t = t;
    s.X = 1.0 / std::log(t);
    s.cutoff = std::pow(t, 2.0 * eps0) * std::log(t);
    s.model = model;
    if (s.cutoff > static_cast<double>(tab.limit()) + 0.5)
        throw std::invalid_argument("build_series: cutoff beyond tables");

    const std::int64_t cut = static_cast<std::int64_t>(std::floor(s.cutoff));
    std::int64_t m3_max = static_cast<std::int64_t>(
        std::sqrt(static_cast<double>(std::max<std::int64_t>(cut, 0))));
    while (m3_max * m3_max > cut) --m3_max;

    for (std::int64_t m3 = -m3_max; m3 <= m3_max; ++m3) {
        const std::int64_t lmax = cut - m3 * m3;
        for (std::int64_t ell = 0; ell <= lmax; ++ell) {
            if (ell == 0 && m3 == 0) continue;
            double reps;
            if (ell == 0) {
                reps = 1.0;  // single lattice vector on the axis
            } else {
                const std::int32_t r = tab.r2(ell);
                if (r == 0) continue;
                reps = static_cast<double>(r);
            }
            freq_class fc;
            fc.ell = ell;
            fc.m3 = m3;
            fc.norm2 = ell + m3 * m3;
            fc.lambda = g.support(std::sqrt(static_cast<double>(ell)),
                                  static_cast<double>(m3));
            double alpha = 1.0;
            if (model == coeff_model::curvature) {
                const double kg = class_gauss_curvature(g, ell, m3);
                if (!(kg > 0.0))
                    throw std::runtime_error(
                        "build_series: non-positive curvature coefficient");
                alpha = 1.0 / std::sqrt(kg);
            }
            fc.g = reps * alpha;
            s.classes.push_back(fc);
        }
    }

    std::sort(s.classes.begin(), s.classes.end(),
              [](const freq_class& a, const freq_class& b) {
                  if (a.lambda != b.lambda) return a.lambda < b.lambda;
                  if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
                  if (a.m3 != b.m3) return a.m3 < b.m3;
                  return a.ell < b.ell;
              });

    s.f.reserve(s.classes.size());
    kahan_sum mass;
    for (const freq_class& fc : s.classes) {
        const double damp =
            std::exp(-0.5 * kPi * kPi * s.X * fc.lambda * fc.lambda);
        const double f = fc.g / static_cast<double>(fc.norm2) * damp;
        s.f.push_back(f);
        mass += f;
    }
    s.total_f = mass.value();
    return s;
}

double eval_S(const spectral_series& s, double t) {
    kahan_sum acc;
    const double two_pi_t = 2.0 * kPi * t;
    for (std::size_t i = 0; i < s.classes.size(); ++i)
        acc += s.f[i] * std::cos(two_pi_t * s.classes[i].lambda);
    return acc.value();
}

namespace {

borel_result borel_quadrature(const std::function<double(double)>& phi,
                              double t, const borel_options& opt) {
    if (!(t >= 3.0)) throw std::invalid_argument("borel_mean: t >= 3");
    if (opt.nodes < 257)
        throw std::invalid_argument("borel_mean: nodes >= 257");
    if (opt.panel_order < 2 || (opt.panel_order % 2) != 0)
        throw std::invalid_argument("borel_mean: panel_order must be even");
    borel_result res;
    res.t = t;
    const double logt = std::log(t);
    const double k = t * t * logt;
    res.k = k;
    res.X = 1.0 / logt;
    const double sk = std::sqrt(k);
    const double u_hi = k + opt.window * sk;
    if (res.X * u_hi > opt.max_dilation)
        throw std::invalid_argument(
            "borel_mean: dilation guard exceeded (raise max_dilation)");
    const double u_lo = std::max(k - opt.window * sk, 0.0);

    const int panels = (opt.nodes - 2 + opt.panel_order) / opt.panel_order;
    const cc_rule rule =
        composite_clenshaw_curtis(u_lo, u_hi, panels, opt.panel_order);
    res.nodes = static_cast<int>(rule.nodes.size());

    const double lg = log_gamma_stirling(k + 1.0);
    std::vector<double> wdens(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = rule.nodes[i];
        wdens[i] = u > 0.0
                       ? rule.weights[i] * std::exp(k * std::log(u) - u - lg)
                       : 0.0;
    }
    kahan_sum mass;
    for (const double w : wdens) mass += w;
    res.weight_mass = mass.value();
    if (std::abs(res.weight_mass - 1.0) > opt.mass_tol)
        throw std::runtime_error("borel_mean: Gamma mass check failed");

    std::vector<double> vals(rule.nodes.size());
    const std::int64_t n = static_cast<std::int64_t>(rule.nodes.size());
    parallel_chunks(n, 256, opt.workers,
                    [&](std::int64_t b, std::int64_t e, std::size_t) {
                        for (std::int64_t i = b; i < e; ++i)
                            vals[static_cast<std::size_t>(i)] =
                                wdens[static_cast<std::size_t>(i)] == 0.0
                                    ? 0.0
                                    : phi(rule.nodes[static_cast<std::size_t>(i)]);
                    });
    kahan_sum acc;
    for (std::size_t i = 0; i < vals.size(); ++i) acc += wdens[i] * vals[i];
    res.value = acc.value();
    return res;
}

}  // namespace

borel_result borel_mean_of(const std::function<double(double)>& phi, double t,
                           const borel_options& opt) {
    return borel_quadrature(phi, t, opt);
}

borel_result borel_mean(const body_geometry& g, double t,
                        const borel_options& opt) {
    count_options copt = opt.count;
    copt.workers = 1;  // parallelism lives at the node level
    const double vol = g.volume();
    const double logt = std::log(t);
    const double X = 1.0 / logt;
    return borel_quadrature(
        [&](double u) {
            const double v = X * u;
            const double n =
                static_cast<double>(count_points(g, v, copt).count);
            return n - vol * std::pow(v, 1.5);
        },
        t, opt);
}

link_report spectral_link_report(const body_geometry& g,
                                 const arith_tables& tab,
                                 const std::vector<double>& ts,
                                 coeff_model model, double eps0,
                                 const borel_options& opt) {
    if (ts.size() < 2)
        throw std::invalid_argument("spectral_link_report: need >= 2 points");
    link_report rep;
    rep.rows.reserve(ts.size());
    for (const double t : ts) {
        link_row row;
        row.t = t;
        const spectral_series s = build_series(g, tab, t, model, eps0);
        row.predicted = -t * eval_S(s, t) / (2.0 * kPi);
        row.borel = borel_mean(g, t, opt).value;
        rep.rows.push_back(row);
    }
    // least-squares scale through the origin
    kahan_sum num, den;
    for (const link_row& r : rep.rows) {
        num += r.borel * r.predicted;
        den += r.predicted * r.predicted;
    }
    rep.scale = den.value() > 0.0 ? num.value() / den.value() : 0.0;
    for (link_row& r : rep.rows) r.residual = r.borel - rep.scale * r.predicted;

    // Pearson correlation
    const double n = static_cast<double>(rep.rows.size());
    kahan_sum sb, sp;
    for (const link_row& r : rep.rows) {
        sb += r.borel;
        sp += r.predicted;
    }
    const double mb = sb.value() / n;
    const double mp = sp.value() / n;
    kahan_sum sbb, spp, sbp;
    for (const link_row& r : rep.rows) {
        sbb += (r.borel - mb) * (r.borel - mb);
        spp += (r.predicted - mp) * (r.predicted - mp);
        sbp += (r.borel - mb) * (r.predicted - mp);
    }
    const double d = std::sqrt(sbb.value() * spp.value());
    rep.pearson = d > 0.0 ? sbp.value() / d : 0.0;
    return rep;
}

}  // namespace latdisc
