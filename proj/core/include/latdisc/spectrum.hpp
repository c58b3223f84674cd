#pragma once
// Frequency-class series attached to a body and an evaluation scale t, the
// Gamma-weighted long-window mean of the lattice discrepancy, and the report
// linking the two.
//
// A frequency class aggregates the lattice vectors (m1,m2,m3) sharing
// l = m1^2 + m2^2; its frequency is the support value H(sqrt(l),0,m3), its
// weight f = g/(l+m3^2) * exp(-pi^2/2 * X * H^2) with X = 1/log t. The mean
//   B(t) = (1/Gamma(k+1)) * int_0^inf e^-u u^k P(X u) du,   k = t^2 log t,
// is evaluated by composite Clenshaw-Curtis on u = k + s*sqrt(k), s in
// [-window, window], with the Gamma density in log space (Stirling log-gamma).

#include <cstdint>
#include <functional>
#include <vector>

#include "latdisc/arith.hpp"
#include "latdisc/body.hpp"
#include "latdisc/lattice.hpp"

namespace latdisc {

enum class coeff_model { unit, curvature };

struct freq_class {
    std::int64_t ell = 0;
    std::int64_t m3 = 0;
    std::int64_t norm2 = 0;  // ell + m3^2
    double lambda = 0.0;     // support value H(sqrt(ell), 0, m3)
    double g = 0.0;          // aggregated class coefficient
};

struct spectral_series {
    double t = 0.0;
    double X = 0.0;       // 1 / log t
    double cutoff = 0.0;  // t^(2 eps0) log t
    coeff_model model = coeff_model::unit;
    std::vector<freq_class> classes;  // sorted by lambda, ties (norm2, m3, ell)
    std::vector<double> f;            // damped weights, parallel to classes
    double total_f = 0.0;             // sum of f (kahan, class order)
};

// t >= 3; requires tables.limit() >= cutoff. Classes with l > 0 and r2(l) = 0
// are omitted; axis classes (l = 0, m3 != 0) carry one representation.
spectral_series build_series(const body_geometry& g, const arith_tables& tab,
                             double t, coeff_model model = coeff_model::unit,
                             double eps0 = 0.3);

// sum f(n) cos(2 pi lambda_n t), compensated, in stored class order. The
// weights stay frozen to the series' own X regardless of the t given here.
double eval_S(const spectral_series& s, double t);

struct borel_options {
    int nodes = 65537;        // >= 257; composite CC total node floor
    int panel_order = 64;     // CC nodes per panel (even)
    double window = 8.0;      // integrate over u = k +- window*sqrt(k)
    double max_dilation = 2e4;  // guard on X*u (count cost ~ linear in it)
    double mass_tol = 1e-6;   // runtime check: quadrature Gamma mass
    int workers = 0;
    count_options count;      // forwarded to count_points (workers forced 1)
};

struct borel_result {
    double t = 0.0;
    double k = 0.0;
    double X = 0.0;
    double value = 0.0;
    double weight_mass = 0.0;  // integral of the Gamma density over window
    int nodes = 0;
};

borel_result borel_mean(const body_geometry& g, double t,
                        const borel_options& opt = {});

// Same Gamma-weighted quadrature applied to an arbitrary integrand phi(u);
// exposed for the normalization self-checks (phi = 1, phi = X u).
borel_result borel_mean_of(const std::function<double(double)>& phi, double t,
                           const borel_options& opt = {});

struct link_row {
    double t = 0.0;
    double borel = 0.0;
    double predicted = 0.0;  // -t * S(t) / (2 pi), unscaled
    double residual = 0.0;   // borel - scale * predicted
};

struct link_report {
    std::vector<link_row> rows;
    double scale = 0.0;    // least-squares factor through the origin
    double pearson = 0.0;  // correlation of borel vs predicted
};

link_report spectral_link_report(const body_geometry& g,
                                 const arith_tables& tab,
                                 const std::vector<double>& ts,
                                 coeff_model model = coeff_model::unit,
                                 double eps0 = 0.3,
                                 const borel_options& opt = {});

}  // namespace latdisc
