#pragma once
// Shared numeric kernels: compensated summation, 1-D optimization/root finding,
// adaptive quadrature, Clenshaw-Curtis rules, Stirling log-gamma, iterated logs,
// deterministic chunked parallelism and a self-contained RNG toolkit.
//
// Everything here is deterministic: no call depends on thread scheduling, and
// random sampling is pinned to mt19937_64 with explicit bit-to-double maps.

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace latdisc {

// ---------------------------------------------------------------- kahan_sum

// Compensated accumulator; += order defines the result bit-for-bit.
struct kahan_sum {
    double sum = 0.0;
    double cor = 0.0;

    kahan_sum& operator+=(double x) {
        const double y = x - cor;
        const double t = sum + y;
        cor = (t - sum) - y;
        sum = t;
        return *this;
    }
    double value() const { return sum; }
};

// ------------------------------------------------------- 1-D search kernels

// Golden-section maximum of a unimodal f on [a,b]; shrinks bracket to width
// <= xtol, returns bracket midpoint.
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double xtol, int max_iter = 200);

// Bisection root of f on [a,b]; requires f(a), f(b) of opposite sign (or zero).
// Shrinks bracket to width <= xtol.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double xtol, int max_iter = 400);

// --------------------------------------------------------------- quadrature

// Adaptive Simpson on [a,b] to relative tolerance rel_tol (absolute floor
// abs_floor guards integrals near zero). Throws on depth exhaustion.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, double abs_floor = 1e-300,
                        int max_depth = 60);

// Clenshaw-Curtis rule with m+1 nodes on [-1,1] (m even). nodes[j] = cos(j*pi/m)
// in descending order; weights sum to 2. O(m^2) build, intended for m <= 256.
struct cc_rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
cc_rule clenshaw_curtis(int m);

// Composite Clenshaw-Curtis over [a,b]: `panels` panels with an (m+1)-node rule
// each, interior panel edges shared. Total distinct nodes = panels*m + 1.
// Returns abscissae and weights for the whole interval.
cc_rule composite_clenshaw_curtis(double a, double b, int panels, int m);

// --------------------------------------------------------------- log-gamma

// Stirling series with 8 correction terms; relative error < 1e-15 for z >= 9.
// Argument must be positive; callers shift small arguments themselves.
double log_gamma_stirling(double z);

// ------------------------------------------------------------ iterated logs

// depth-fold natural logarithm. raw variant may return non-finite values for
// arguments at/below the singularity; clamped variant pins every stage that
// drops below 1 back to 1 and reports it.
double iterated_log_raw(double x, int depth);

struct iter_log_result {
    double value;
    bool clamped;
};
iter_log_result iterated_log_clamped(double x, int depth);

// --------------------------------------------------- deterministic parallel

// Applies fn(begin, end, chunk_index) over [0,n) split into fixed chunks of
// size chunk (last chunk ragged). Chunk geometry depends only on n and chunk,
// never on workers, so per-chunk outputs are scheduler-independent; callers
// combine per-chunk partials in chunk order.
void parallel_chunks(std::int64_t n, std::int64_t chunk, int workers,
                     const std::function<void(std::int64_t, std::int64_t,
                                              std::size_t)>& fn);

// Worker count actually used for `requested` (0 = hardware concurrency).
int resolve_workers(int requested);

// ---------------------------------------------------------------------- rng

// Uniform in (0,1]: 53-bit mantissa map, identical across platforms.
inline double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal via Box-Muller (uses exactly two draws).
double normal_sample(std::mt19937_64& rng);

// Gamma(shape, 1) via Marsaglia-Tsang; shape >= 1.
double gamma_sample(std::mt19937_64& rng, double shape);

}  // namespace latdisc
