#include "latdisc/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "latdisc/numerics.hpp"

namespace latdisc {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

// Grid sums are produced by a phasor recurrence re-anchored with exact trig
// every `anchor_len` steps, so rounding drift stays below ~1e-12 relative
// while each grid point costs one multiply-add per class.
constexpr std::int64_t anchor_len = 4096;
constexpr std::int64_t scan_chunk = 65536;

// Fills out[0..e-b) with sum_i f_i cos(2 pi lambda_i (lo + j step)), j in [b,e).
void eval_block(const lemma_instance& inst, double lo, double step,
                std::int64_t b, std::int64_t e, double* out) {
    std::fill(out, out + (e - b), 0.0);
    for (std::int64_t a = b; a < e; a += anchor_len) {
        const std::int64_t m = std::min(anchor_len, e - a);
        double* blk = out + (a - b);
        for (std::size_t i = 0; i < inst.f.size(); ++i) {
            const double fi = inst.f[i];
            if (fi == 0.0) continue;
            const double w = two_pi * inst.lambda[i];
            const double phi = w * (lo + static_cast<double>(a) * step);
            double c = std::cos(phi);
            double s = std::sin(phi);
            const double cw = std::cos(w * step);
            const double sw = std::sin(w * step);
            for (std::int64_t j = 0; j < m; ++j) {
                blk[j] += fi * c;
                const double cn = c * cw - s * sw;
                s = c * sw + s * cw;
                c = cn;
            }
        }
    }
}

// Exact-eval refinement around grid index j; returns (t, value) of the best
// point found, never worse than the exact sum at the grid point itself.
std::pair<double, double> refine_peak(const lemma_instance& inst, double lo,
                                      double step, std::int64_t j, double lo_cap,
                                      double xtol) {
    const double tj = lo + static_cast<double>(j) * step;
    const double a = std::max(lo_cap, tj - step);
    const double b = tj + step;
    const auto sum_at = [&](double t) { return lemma_sum(inst, t); };
    const double tr = golden_max(sum_at, a, b, xtol);
    double best_t = tj;
    double best_v = lemma_sum(inst, tj);
    const double vr = lemma_sum(inst, tr);
    if (vr > best_v) {
        best_t = tr;
        best_v = vr;
    }
    return {best_t, best_v};
}

}  // namespace

void validate_instance(const lemma_instance& inst) {
    if (inst.f.size() != inst.lambda.size())
        throw std::invalid_argument("lemma: weight/frequency length mismatch");
    if (inst.f.empty()) throw std::invalid_argument("lemma: empty instance");
    if (!(inst.Lambda > 0.0) || !std::isfinite(inst.Lambda))
        throw std::invalid_argument("lemma: Lambda must be positive");
    if (!(inst.L >= 2.0)) throw std::invalid_argument("lemma: L must be >= 2");
    if (!(inst.T >= 2.0)) throw std::invalid_argument("lemma: T must be >= 2");
    double prev = 0.0;
    for (std::size_t i = 0; i < inst.f.size(); ++i) {
        if (!(inst.f[i] >= 0.0) || !std::isfinite(inst.f[i]))
            throw std::invalid_argument("lemma: weights must be finite and >= 0");
        const double l = inst.lambda[i];
        if (!(l > 0.0) || !std::isfinite(l))
            throw std::invalid_argument("lemma: frequencies must be positive");
        if (l < prev)
            throw std::invalid_argument("lemma: frequencies must be non-decreasing");
        prev = l;
    }
    const double wlo = 0.5 * inst.Lambda * (1.0 - 1e-9);
    const double whi = 1.5 * inst.Lambda * (1.0 + 1e-9);
    std::size_t prev_idx = 0;
    bool first = true;
    for (std::size_t m : inst.M) {
        if (m >= inst.f.size())
            throw std::invalid_argument("lemma: resonant index out of range");
        if (!first && m <= prev_idx)
            throw std::invalid_argument("lemma: resonant indices must increase");
        first = false;
        prev_idx = m;
        if (inst.lambda[m] < wlo || inst.lambda[m] > whi)
            throw std::invalid_argument(
                "lemma: resonant frequency outside [Lambda/2, 3 Lambda/2]");
    }
}

bool interval_conforming(const lemma_instance& inst) {
    const double lhs =
        static_cast<double>(inst.M.size() + 1) * std::log(6.0 * inst.L);
    return lhs <= std::log(inst.T) + 1e-12;
}

double rhs_bound(const lemma_instance& inst) {
    validate_instance(inst);
    kahan_sum main_term, near_term, total;
    for (std::size_t m : inst.M) main_term += inst.f[m];
    const double band = 2.0 * inst.Lambda;
    for (std::size_t i = 0; i < inst.f.size(); ++i) {
        if (inst.lambda[i] <= band) near_term += inst.f[i];
        total += inst.f[i];
    }
    const double pi2 = two_pi * two_pi / 4.0;
    return 0.125 * main_term.value() - near_term.value() / (inst.L - 1.0) -
           2.0 * total.value() / (pi2 * inst.T * inst.Lambda);
}

double lemma_sum(const lemma_instance& inst, double t) {
    kahan_sum acc;
    for (std::size_t i = 0; i < inst.f.size(); ++i)
        acc += inst.f[i] * std::cos(two_pi * inst.lambda[i] * t);
    return acc.value();
}

lemma_witness search_witness(const lemma_instance& inst,
                             const search_options& opt) {
    validate_instance(inst);
    lemma_witness w;
    w.rhs = rhs_bound(inst);

    const double lam_max = inst.lambda.back();
    const double step =
        opt.grid_step > 0.0 ? opt.grid_step : 1.0 / (8.0 * lam_max);
    if (step > (1.0 / (4.0 * lam_max)) * (1.0 + 1e-12))
        throw std::invalid_argument("lemma: grid step coarser than 1/(4 lambda_max)");
    w.grid_step = step;

    const double lo = 0.5 * inst.T;
    const double log_hi =
        static_cast<double>(inst.M.size() + 1) * std::log(6.0 * inst.L) +
        std::log(inst.T);
    double n_full_d = std::numeric_limits<double>::infinity();
    if (log_hi < 700.0)
        n_full_d = std::floor((std::exp(log_hi) - lo) / step) + 1.0;
    const bool full_fits =
        std::isfinite(n_full_d) && n_full_d <= static_cast<double>(opt.budget);
    const std::int64_t n =
        full_fits ? static_cast<std::int64_t>(n_full_d) : opt.budget;
    if (n < 2) throw std::invalid_argument("lemma: search budget too small");
    w.capped = !full_fits;
    w.grid_points = n;
    w.searched_lo = lo;
    w.searched_hi = lo + static_cast<double>(n - 1) * step;

    const std::int64_t stride = opt.sample_stride;
    if (stride > 0)
        w.samples.resize(static_cast<std::size_t>((n - 1) / stride + 1));
    const auto record_samples = [&](std::int64_t b, std::int64_t e,
                                    const double* vals) {
        if (stride <= 0) return;
        std::int64_t j = (b + stride - 1) / stride * stride;
        for (; j < e; j += stride)
            w.samples[static_cast<std::size_t>(j / stride)] = {
                lo + static_cast<double>(j) * step, vals[j - b]};
    };

    std::int64_t best_j = 0;
    if (opt.stop_at_first_hit) {
        // Serial forward scan; the certificate guarantees existence, so the
        // expected cost is the distance to the first crossing.
        std::vector<double> buf(static_cast<std::size_t>(scan_chunk));
        double best_v = -std::numeric_limits<double>::infinity();
        for (std::int64_t b = 0; b < n && !w.met; b += scan_chunk) {
            const std::int64_t e = std::min(n, b + scan_chunk);
            eval_block(inst, lo, step, b, e, buf.data());
            record_samples(b, e, buf.data());
            for (std::int64_t j = b; j < e; ++j) {
                const double v = buf[static_cast<std::size_t>(j - b)];
                if (v > best_v) {
                    best_v = v;
                    best_j = j;
                }
                if (v >= w.rhs) {
                    const auto peak =
                        refine_peak(inst, lo, step, j, lo, opt.refine_xtol);
                    if (peak.second >= w.rhs) {
                        w.t = peak.first;
                        w.sum_value = peak.second;
                        w.met = true;
                        w.searched_hi = lo + static_cast<double>(j) * step;
                        break;
                    }
                }
            }
        }
        if (w.met) return w;
    } else {
        const std::int64_t nchunks = (n + scan_chunk - 1) / scan_chunk;
        std::vector<double> chunk_best(static_cast<std::size_t>(nchunks),
                                       -std::numeric_limits<double>::infinity());
        std::vector<std::int64_t> chunk_arg(static_cast<std::size_t>(nchunks), 0);
        parallel_chunks(n, scan_chunk, opt.workers,
                        [&](std::int64_t b, std::int64_t e, std::size_t ci) {
                            std::vector<double> buf(static_cast<std::size_t>(e - b));
                            eval_block(inst, lo, step, b, e, buf.data());
                            record_samples(b, e, buf.data());
                            double bv = -std::numeric_limits<double>::infinity();
                            std::int64_t bj = b;
                            for (std::int64_t j = b; j < e; ++j) {
                                const double v = buf[static_cast<std::size_t>(j - b)];
                                if (v > bv) {
                                    bv = v;
                                    bj = j;
                                }
                            }
                            chunk_best[ci] = bv;
                            chunk_arg[ci] = bj;
                        });
        double best_v = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < chunk_best.size(); ++c) {
            // strict comparison keeps the smallest t on exact ties
            if (chunk_best[c] > best_v) {
                best_v = chunk_best[c];
                best_j = chunk_arg[c];
            }
        }
    }

    const auto peak = refine_peak(inst, lo, step, best_j, lo, opt.refine_xtol);
    w.t = peak.first;
    w.sum_value = peak.second;
    w.met = w.sum_value >= w.rhs;
    return w;
}

lemma_instance random_lemma_instance(std::mt19937_64& rng, int max_m, double L,
                                     double T) {
    lemma_instance inst;
    inst.L = L;
    inst.T = T;
    inst.Lambda = 0.8 + 0.45 * uniform01(rng);
    const int n_m = 1 + static_cast<int>(uniform01(rng) * max_m) % max_m;
    const int n_tail = static_cast<int>(uniform01(rng) * 9.0) % 9;
    struct entry {
        double lambda, f;
        bool resonant;
    };
    std::vector<entry> es;
    for (int i = 0; i < n_m; ++i)
        es.push_back({inst.Lambda * (0.5 + uniform01(rng)),
                      0.2 + 0.8 * uniform01(rng), true});
    for (int i = 0; i < n_tail; ++i)
        es.push_back({inst.Lambda * (0.25 + 4.75 * uniform01(rng)),
                      0.4 * uniform01(rng), false});
    std::sort(es.begin(), es.end(),
              [](const entry& a, const entry& b) { return a.lambda < b.lambda; });
    for (std::size_t i = 0; i < es.size(); ++i) {
        inst.f.push_back(es[i].f);
        inst.lambda.push_back(es[i].lambda);
        if (es[i].resonant) inst.M.push_back(i);
    }
    return inst;
}

// ------------------------------------------------------------ construction

lambda_selection select_lambda(double T, double beta, double c0) {
    if (!(T >= 3.0)) throw std::invalid_argument("select_lambda: T must be >= 3");
    if (!(beta > 0.0)) throw std::invalid_argument("select_lambda: beta must be positive");
    if (!(c0 > 0.0)) throw std::invalid_argument("select_lambda: c0 must be positive");
    lambda_selection out;
    const auto i1 = iterated_log_clamped(T, 1);
    const auto i2 = iterated_log_clamped(T, 2);
    const auto i3 = iterated_log_clamped(T, 3);
    out.l1 = i1.value;
    out.l2 = i2.value;
    out.l3 = i3.value;
    out.clamped = i1.clamped || i2.clamped || i3.clamped;
    const double e2 = (1.0 - beta + beta * std::log(2.0 * beta)) / 3.0;
    out.lambda = c0 * std::pow(out.l1, 1.0 / 3.0) * std::pow(out.l2, e2) *
                 std::pow(out.l3, -1.0 / 6.0);
    return out;
}

double growth_exponent(double beta) {
    if (!(beta > 0.0))
        throw std::invalid_argument("growth_exponent: beta must be positive");
    return (2.0 / 3.0) * (beta - 1.0 - beta * std::log(beta)) +
           beta * std::log(2.0) / 3.0;
}

double optimal_beta(double lo, double hi, double xtol) {
    // E'(beta) = -(2/3) log(beta) + (1/3) log 2, strictly decreasing.
    const auto dE = [](double b) {
        return -(2.0 / 3.0) * std::log(b) + std::log(2.0) / 3.0;
    };
    return bisect_root(dE, lo, hi, xtol);
}

resonant_selection select_resonant_classes(const spectral_series& s,
                                           const body_geometry& g,
                                           const arith_tables& tab,
                                           double Lambda, double beta) {
    if (!(Lambda > 0.0))
        throw std::invalid_argument("resonant selection: Lambda must be positive");
    if (!(beta > 0.0))
        throw std::invalid_argument("resonant selection: beta must be positive");
    resonant_selection out;
    const auto ll = iterated_log_clamped(Lambda, 2);
    out.k_clamped = ll.clamped;
    out.k = static_cast<int>(std::floor(beta * ll.value));

    const freq_rect& rc = g.rect();
    const auto ells = enumerate_resonant(tab, Lambda, out.k, rc.a1, rc.a2);
    out.ell_count = static_cast<std::int64_t>(ells.size());
    const auto m3_lo = static_cast<std::int64_t>(std::ceil(rc.a3 * Lambda - 1e-9));
    const auto m3_hi = static_cast<std::int64_t>(std::floor(rc.a4 * Lambda + 1e-9));
    out.m3_count = std::max<std::int64_t>(0, m3_hi - m3_lo + 1);

    const double need = rc.a2 * rc.a2 * Lambda * Lambda +
                        rc.a4 * rc.a4 * Lambda * Lambda;
    if (out.ell_count > 0 && out.m3_count > 0 && need > s.cutoff) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "resonant selection: window needs |w|^2 <= %.6g but the "
                      "series cutoff is %.6g",
                      need, s.cutoff);
        throw std::invalid_argument(msg);
    }

    const double wlo = 0.5 * Lambda * (1.0 - 1e-9);
    const double whi = 1.5 * Lambda * (1.0 + 1e-9);
    out.lambda_lo = std::numeric_limits<double>::infinity();
    out.lambda_hi = 0.0;
    for (std::size_t i = 0; i < s.classes.size(); ++i) {
        const auto& cl = s.classes[i];
        if (cl.m3 < m3_lo || cl.m3 > m3_hi) continue;
        if (!std::binary_search(ells.begin(), ells.end(), cl.ell)) continue;
        if (cl.lambda < wlo || cl.lambda > whi)
            throw std::runtime_error(
                "resonant selection: class frequency escapes "
                "[Lambda/2, 3 Lambda/2]; rectangle contract violated");
        out.indices.push_back(i);
        out.lambda_lo = std::min(out.lambda_lo, cl.lambda);
        out.lambda_hi = std::max(out.lambda_hi, cl.lambda);
    }
    if (out.indices.empty()) {
        out.lambda_lo = 0.0;
        out.lambda_hi = 0.0;
    }
    const auto expected =
        static_cast<std::int64_t>(out.ell_count) * out.m3_count;
    if (static_cast<std::int64_t>(out.indices.size()) != expected)
        throw std::runtime_error(
            "resonant selection: class set lost window pairs; raise the "
            "series cutoff");
    return out;
}

pipeline_report run_construction(const body_geometry& g,
                                 const arith_tables& tab, double T,
                                 double beta, const pipeline_options& opt) {
    if (!(T >= 3.0))
        throw std::invalid_argument("construction: T must be >= 3");
    if (!(opt.L >= 2.0))
        throw std::invalid_argument("construction: L must be >= 2");
    pipeline_report r;
    r.T = T;
    r.beta = beta;
    r.c0 = opt.c0;
    r.L = opt.L;
    const auto i2 = iterated_log_clamped(T, 2);
    r.log_L_polylog = 20.0 * std::log(i2.value);
    r.scale = select_lambda(T, beta, opt.c0);

    const auto s = build_series(g, tab, T, opt.model, opt.eps0);
    r.class_count_full = s.classes.size();
    r.selection = select_resonant_classes(s, g, tab, r.scale.lambda, beta);

    // Disclosed truncation: classes whose damped weight falls below
    // f_floor_rel * max f are dropped before the search (resonant classes are
    // always kept). This shrinks both the class count and lambda_max, so the
    // witness grid over the full certificate interval stays affordable; the
    // bound moves by at most the dropped mass, which is reported.
    double fmax = 0.0;
    for (double v : s.f) fmax = std::max(fmax, v);
    const double floor_v = opt.f_floor_rel * fmax;
    std::vector<char> keep(s.f.size(), 0);
    for (std::size_t i = 0; i < s.f.size(); ++i)
        if (s.f[i] >= floor_v) keep[i] = 1;
    for (std::size_t i : r.selection.indices) keep[i] = 1;

    lemma_instance inst;
    inst.Lambda = r.scale.lambda;
    inst.L = opt.L;
    inst.T = T;
    kahan_sum dropped;
    std::vector<std::size_t> remap(s.f.size(), 0);
    for (std::size_t i = 0; i < s.f.size(); ++i) {
        if (!keep[i]) {
            dropped += s.f[i];
            continue;
        }
        remap[i] = inst.f.size();
        inst.f.push_back(s.f[i]);
        inst.lambda.push_back(s.classes[i].lambda);
    }
    for (std::size_t i : r.selection.indices) inst.M.push_back(remap[i]);
    r.class_count = inst.f.size();
    r.dropped_mass = dropped.value();

    r.conforming = interval_conforming(inst);
    r.log_interval_hi =
        static_cast<double>(inst.M.size() + 1) * std::log(6.0 * opt.L) +
        std::log(T);
    kahan_sum sum_m;
    r.damping_max = 0.0;
    for (std::size_t m : inst.M) {
        sum_m += inst.f[m];
        r.damping_max =
            std::max(r.damping_max, s.X * inst.lambda[m] * inst.lambda[m]);
    }
    r.sum_m = sum_m.value();
    r.damping_ok = r.damping_max <= opt.damping_bound;
    r.rhs = rhs_bound(inst);
    r.witness = search_witness(inst, opt.search);

    r.shape_target = std::pow(r.scale.l1, 1.0 / 3.0) *
                     std::pow(r.scale.l2,
                              (2.0 / 3.0) * (std::sqrt(2.0) - 1.0)) *
                     std::pow(r.scale.l3, -2.0 / 3.0);
    r.shape_clamped = r.scale.clamped;
    return r;
}

}  // namespace latdisc
