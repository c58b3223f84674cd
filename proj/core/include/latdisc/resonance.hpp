#pragma once
// Resonance machinery: a lower-bound certificate for weighted cosine sums,
// the grid-plus-refine witness search, selection of the resonant class set
// from a spectral series, the scale selection formulas, and the end-to-end
// construction pipeline.
//
// Certificate: for f >= 0, non-decreasing positive frequencies lambda, a
// finite index set M with lambda_m in [Lambda/2, 3 Lambda/2], L >= 2 and
// T >= 2, some t in [T/2, (6L)^(|M|+1) T] satisfies
//   sum f(n) cos(2 pi lambda_n t)
//     >= (1/8) sum_{m in M} f(m)
//        - (1/(L-1)) sum_{lambda_n <= 2 Lambda} f(n)
//        - (2/(pi^2 T Lambda)) sum f(n).
// search_witness hunts that t numerically and reports whether the bound was
// met on the interval actually scanned.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "latdisc/arith.hpp"
#include "latdisc/body.hpp"
#include "latdisc/spectrum.hpp"

namespace latdisc {

struct lemma_instance {
    std::vector<double> f;        // non-negative weights
    std::vector<double> lambda;   // positive, non-decreasing, same length
    std::vector<std::size_t> M;   // indices with lambda in [Lambda/2, 3Lambda/2]
    double Lambda = 1.0;
    double L = 3.0;  // >= 2
    double T = 2.0;  // >= 2
};

// Throws std::invalid_argument when any hypothesis fails.
void validate_instance(const lemma_instance& inst);

// True when the certificate interval stays inside [T/2, T^2]-style budgets:
// (6L)^(|M|+1) <= T, evaluated in log space.
bool interval_conforming(const lemma_instance& inst);

// The three-term certificate bound (can be negative).
double rhs_bound(const lemma_instance& inst);

// sum f(n) cos(2 pi lambda_n t), compensated.
double lemma_sum(const lemma_instance& inst, double t);

struct search_options {
    double grid_step = 0.0;  // 0 = 1/(8 lambda_max); must be <= 1/(4 lambda_max)
    std::int64_t budget = 20'000'000;  // max grid points scanned
    bool stop_at_first_hit = false;    // return at the first point >= bound
    std::int64_t sample_stride = 0;    // record every k-th (t, sum); 0 = none
    double refine_xtol = 1e-10;
    int workers = 0;
};

struct lemma_witness {
    double t = 0.0;
    double sum_value = 0.0;
    double rhs = 0.0;
    bool met = false;
    double searched_lo = 0.0;
    double searched_hi = 0.0;
    bool capped = false;  // budget truncated the certificate interval
    std::int64_t grid_points = 0;
    double grid_step = 0.0;
    std::vector<std::pair<double, double>> samples;  // (t, sum) at stride
};

lemma_witness search_witness(const lemma_instance& inst,
                             const search_options& opt = {});

// Seeded random instance satisfying every certificate hypothesis: 1..max_m
// resonant classes in [Lambda/2, 3 Lambda/2] plus up to 8 spectators spread
// around the window. Drives the randomized property suite.
lemma_instance random_lemma_instance(std::mt19937_64& rng, int max_m = 4,
                                     double L = 3.0, double T = 16.0);

// ------------------------------------------------------------ construction

struct lambda_selection {
    double lambda = 0.0;
    double l1 = 0.0, l2 = 0.0, l3 = 0.0;  // iterated logs of T (clamped)
    bool clamped = false;
};

// Lambda = c0 (log T)^(1/3) (llog T)^((1/3)(1 - b + b log 2b)) (lllog T)^(-1/6)
lambda_selection select_lambda(double T, double beta, double c0);

// E(b) = (2/3)(b - 1 - b log b) + (1/3) b log 2; the normalized-size exponent
// of the resonant sum as a function of the prime-count parameter.
double growth_exponent(double beta);
// argmax of E by bisection on its derivative; equals sqrt(2) analytically.
double optimal_beta(double lo = 0.25, double hi = 8.0, double xtol = 1e-12);

struct resonant_selection {
    std::vector<std::size_t> indices;  // positions in the series class order
    int k = 0;                         // distinct-prime-count target
    std::int64_t ell_count = 0;        // admissible ell values in the window
    std::int64_t m3_count = 0;         // integers in [a3 L, a4 L]
    double lambda_lo = 0.0, lambda_hi = 0.0;  // extremes over selected classes
    bool k_clamped = false;
};

// Picks series classes with ell in the A1/omega=k window scaled by Lambda and
// m3 in [a3 Lambda, a4 Lambda]. Verifies the product structure
// |M| = ell_count * m3_count and the frequency window [Lambda/2, 3 Lambda/2];
// violations throw (they indicate a rectangle contract breach).
resonant_selection select_resonant_classes(const spectral_series& s,
                                           const body_geometry& g,
                                           const arith_tables& tab,
                                           double Lambda, double beta);

struct pipeline_options {
    double L = 3.0;            // desk-scale override of the (llog T)^20 rule
    double c0 = 0.5;
    double eps0 = 0.3;
    coeff_model model = coeff_model::unit;
    double f_floor_rel = 1e-12;  // drop classes with f below rel. floor
    double damping_bound = 10.0;  // (**): require X lambda_m^2 <= this
    search_options search;
};

struct pipeline_report {
    double T = 0.0, beta = 0.0, c0 = 0.0, L = 0.0;
    double log_L_polylog = 0.0;  // log of the polylog-sized alternative interval
    lambda_selection scale;
    std::size_t class_count_full = 0, class_count = 0;
    double dropped_mass = 0.0;
    resonant_selection selection;
    bool conforming = false;      // (*) (6L)^(|M|+1) <= T
    double log_interval_hi = 0.0; // log((6L)^(|M|+1) T)
    double damping_max = 0.0;     // max over M of X lambda^2
    bool damping_ok = false;      // (**)
    double sum_m = 0.0;           // sum of f over M
    double rhs = 0.0;
    double shape_target = 0.0;    // (log T)^(1/3)(llog T)^(2/3(sqrt2-1))(lllog T)^(-2/3)
    bool shape_clamped = false;
    lemma_witness witness;
};

pipeline_report run_construction(const body_geometry& g,
                                 const arith_tables& tab, double T,
                                 double beta, const pipeline_options& opt = {});

}  // namespace latdisc
