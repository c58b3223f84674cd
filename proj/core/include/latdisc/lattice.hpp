#pragma once
// Lattice point counting inside the sqrt(t)-dilated body and the resulting
// discrepancy statistics.
//
// count_points slices the dilated body by integer horizontal planes and
// counts each disc with the 8-fold-symmetric row-sum formula. Boundary
// membership is the closed condition; decisions inside a floating-point
// guard band around the squared slice radius are retaken with the slice
// radius re-solved at tight tolerance plus a small inclusion epsilon, so
// exact ties (sphere and spheroid at integer t produce them in bulk) land
// inside deterministically. brute_count applies the same rule radially.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "latdisc/body.hpp"

namespace latdisc {

struct count_options {
    double guard_band_rel = 1e-9;   // in-band window, relative to max(16, s2)
    double include_rel = 1e-10;     // closed-membership epsilon after refine
    double root_xtol = 1e-12;       // slice radius bisection, default pass
    double root_xtol_refined = 1e-15;  // slice radius bisection, guard pass
    int workers = 0;                // 0 = hardware concurrency
    std::int64_t brute_box_limit = 100'000'000;  // brute_count point budget
};

struct count_result {
    double t = 0.0;
    std::int64_t count = 0;
    // (m3, points in slice), ascending m3
    std::vector<std::pair<std::int64_t, std::int64_t>> per_slice;
    // lattice points whose membership needed the refined guard-band decision
    std::int64_t boundary_flags = 0;
};

struct scan_record {
    double t = 0.0;
    std::int64_t count = 0;
    double volume_term = 0.0;  // vol(B) * t^(3/2)
    double discrepancy = 0.0;  // count - volume_term
    // discrepancy / (t^(1/2) (log t)^(1/3) (llog t)^(2/3(sqrt2-1)) (lllog t)^(-2/3));
    // present for t >= 20 where all iterated logs are positive
    std::optional<double> normalized;
};

struct scan_report {
    std::vector<scan_record> records;
    double min_discrepancy = 0.0;
    double min_discrepancy_t = 0.0;
};

count_result count_points(const body_geometry& g, double t,
                          const count_options& opt = {});

// Exhaustive box scan with the radial membership test; refuses boxes over
// opt.brute_box_limit points.
count_result brute_count(const body_geometry& g, double t,
                         const count_options& opt = {});

scan_record discrepancy(const body_geometry& g, double t,
                        const count_options& opt = {});

scan_report discrepancy_scan(const body_geometry& g,
                             const std::vector<double>& ts,
                             const count_options& opt = {});

// Normalization denominator for the slow-growth trend; t >= 20.
double trend_normalizer(double t);

// Test hooks: one slice counted by the folded formula vs the plain row sum,
// through the identical guard-band oracle.
std::int64_t detail_count_slice_rowsum(const body_geometry& g, double t,
                                       double z, const count_options& opt = {});
std::int64_t detail_count_slice_folded(const body_geometry& g, double t,
                                       double z, const count_options& opt = {});

}  // namespace latdisc
