#include "latdisc/numerics.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace latdisc {

// ------------------------------------------------------- 1-D search kernels

double golden_max(const std::function<double(double)>& f, double a, double b,
                  double xtol, int max_iter) {
    if (!(b >= a)) throw std::invalid_argument("golden_max: empty bracket");
    constexpr double invphi = 0.6180339887498949;   // 1/phi
    constexpr double invphi2 = 0.3819660112501051;  // 1/phi^2
    double h = b - a;
    if (h <= xtol) return 0.5 * (a + b);
    double x1 = a + invphi2 * h;
    double x2 = a + invphi * h;
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < max_iter && h > xtol; ++i) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            h = b - a;
            x1 = a + invphi2 * h;
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            h = b - a;
            x2 = a + invphi * h;
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double xtol, int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("bisect_root: no sign change on bracket");
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// --------------------------------------------------------------- quadrature

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= max_depth) {
        if (depth >= max_depth && std::abs(delta) > 15.0 * tol)
            throw std::runtime_error("adaptive_simpson: depth exhausted");
        return left + right + delta / 15.0;
    }
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, double abs_floor,
                        int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, b - a);
    // two-pass: a first estimate sets the absolute tolerance scale
    const double scale = std::max(std::abs(whole), abs_floor);
    return adapt(f, a, b, fa, fm, fb, whole, rel_tol * scale, 0, max_depth);
}

cc_rule clenshaw_curtis(int m) {
    if (m < 2 || (m % 2) != 0)
        throw std::invalid_argument("clenshaw_curtis: m must be even, >= 2");
    cc_rule r;
    r.nodes.resize(m + 1);
    r.weights.resize(m + 1);
    const double pi = 3.14159265358979323846;
    for (int j = 0; j <= m; ++j) r.nodes[j] = std::cos(j * pi / m);
    // w_j = (2/m) * theta_j * [1 + sum_{k even, 2..m-2} 2 cos(k j pi/m)/(1-k^2)
    //                            + cos(j pi) / (1 - m^2)]
    for (int j = 0; j <= m; ++j) {
        double s = 1.0;
        for (int k = 2; k <= m - 2; k += 2)
            s += 2.0 * std::cos(k * j * pi / m) / (1.0 - double(k) * k);
        s += std::cos(double(j) * pi) / (1.0 - double(m) * m);
        const double theta = (j == 0 || j == m) ? 0.5 : 1.0;
        r.weights[j] = 2.0 / m * theta * s;
    }
    return r;
}

cc_rule composite_clenshaw_curtis(double a, double b, int panels, int m) {
    if (panels < 1) throw std::invalid_argument("composite cc: panels >= 1");
    const cc_rule base = clenshaw_curtis(m);
    cc_rule out;
    const std::size_t total = static_cast<std::size_t>(panels) * m + 1;
    out.nodes.resize(total);
    out.weights.assign(total, 0.0);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        for (int j = 0; j <= m; ++j) {
            // base nodes descend from +1 to -1; index so abscissae ascend
            const std::size_t idx =
                static_cast<std::size_t>(p) * m + static_cast<std::size_t>(m - j);
            out.nodes[idx] = mid + 0.5 * h * base.nodes[j];
            out.weights[idx] += 0.5 * h * base.weights[j];
        }
    }
    return out;
}

// --------------------------------------------------------------- log-gamma

double log_gamma_stirling(double z) {
    if (!(z > 0.0)) throw std::invalid_argument("log_gamma_stirling: z > 0");
    // B_{2j} / (2j (2j-1)) for j = 1..8
    static const double c[8] = {
        1.0 / 12.0,           -1.0 / 360.0,       1.0 / 1260.0,
        -1.0 / 1680.0,        1.0 / 1188.0,       -691.0 / 360360.0,
        1.0 / 156.0,          -3617.0 / 122400.0,
    };
    constexpr double half_log_2pi = 0.91893853320467274178;
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (int j = 0; j < 8; ++j) {
        series += c[j] * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + half_log_2pi + series;
}

// ------------------------------------------------------------ iterated logs

double iterated_log_raw(double x, int depth) {
    double v = x;
    for (int i = 0; i < depth; ++i) v = std::log(v);
    return v;
}

iter_log_result iterated_log_clamped(double x, int depth) {
    // Stage rule: a value <= 1 cannot take another log (result would be <= 0),
    // so it propagates as 1 and the chain is flagged. Final values in (0,1)
    // reached from an unclamped chain are legitimate and returned raw.
    iter_log_result r{x, false};
    for (int i = 0; i < depth; ++i) {
        if (r.value <= 1.0) {
            r.value = 1.0;
            r.clamped = true;
        } else {
            r.value = std::log(r.value);
        }
    }
    return r;
}

// --------------------------------------------------- deterministic parallel

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::int64_t n, std::int64_t chunk, int workers,
                     const std::function<void(std::int64_t, std::int64_t,
                                              std::size_t)>& fn) {
    if (n <= 0) return;
    if (chunk <= 0) chunk = n;
    const std::size_t nchunks = static_cast<std::size_t>((n + chunk - 1) / chunk);
    const int w = std::min<std::int64_t>(resolve_workers(workers),
                                         static_cast<std::int64_t>(nchunks));
    if (w <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) {
            const std::int64_t b = static_cast<std::int64_t>(c) * chunk;
            fn(b, std::min(n, b + chunk), c);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    pool.reserve(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= nchunks) return;
                const std::int64_t b = static_cast<std::int64_t>(c) * chunk;
                try {
                    fn(b, std::min(n, b + chunk), c);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------------- rng

double normal_sample(std::mt19937_64& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double pi = 3.14159265358979323846;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

double gamma_sample(std::mt19937_64& rng, double shape) {
    if (!(shape >= 1.0)) throw std::invalid_argument("gamma_sample: shape >= 1");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal_sample(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01(rng);
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace latdisc
