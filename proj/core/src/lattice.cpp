#include "latdisc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latdisc/numerics.hpp"

namespace latdisc {

namespace {

// Membership oracle for one horizontal slice: decides q <= s2 for integer
// squared radii q. Decisions within the guard band re-solve the slice radius
// at tight tolerance and include up to a small epsilon (closed membership).
class slice_oracle {
  public:
    slice_oracle(const body_geometry& g, double t, double z,
                 const count_options& opt)
        : g_(g), t_(t), z_(z), opt_(opt) {
        const double r = g.slice_radius(z, opt.root_xtol);
        s2_ = t * r * r;
        band_ = opt.guard_band_rel * std::max(16.0, s2_);
    }

    double s2() const { return s2_; }
    std::int64_t flagged() const { return flagged_; }

    // multiplicity: unfolded lattice points this decision stands for
    bool contains(std::int64_t q, std::int64_t multiplicity) {
        const double qd = static_cast<double>(q);
        if (qd < s2_ - band_) return true;
        if (qd > s2_ + band_) return false;
        if (!refined_) {
            const double r = g_.slice_radius(z_, opt_.root_xtol_refined);
            s2_ref_ = t_ * r * r;
            incl_ = opt_.include_rel * std::max(1.0, s2_ref_);
            refined_ = true;
        }
        flagged_ += multiplicity;
        return qd <= s2_ref_ + incl_;
    }

  private:
    const body_geometry& g_;
    double t_, z_;
    const count_options& opt_;
    double s2_ = 0.0, band_ = 0.0;
    bool refined_ = false;
    double s2_ref_ = 0.0, incl_ = 0.0;
    std::int64_t flagged_ = 0;
};

// Largest y >= y_floor with pred(y) true, assuming pred is downward closed;
// hint may be off by a few units. Returns y_floor - 1 when even y_floor fails.
template <typename Pred>
std::int64_t fix_boundary(std::int64_t hint, std::int64_t y_floor, Pred pred) {
    std::int64_t y = std::max(hint, y_floor - 1);
    while (pred(y + 1)) ++y;
    while (y >= y_floor && !pred(y)) --y;
    return y;
}

// Points of one slice via 8-fold symmetry:
//   N = 1 + 4*ax + 4*(2*sum_{x=1..d} ymax(x) - d^2)
// where ax is the axis extent, d the diagonal extent. The fold identity is
// exact because every decision reduces to q <= (one effective threshold).
std::int64_t count_slice(slice_oracle& oracle) {
    if (!oracle.contains(0, 1)) return 0;  // slice misses the lattice plane
    const double s2 = std::max(oracle.s2(), 0.0);
    const double r_hint = std::sqrt(s2);

    const std::int64_t ax = fix_boundary(
        static_cast<std::int64_t>(r_hint), 0,
        [&](std::int64_t x) { return oracle.contains(x * x, 4); });
    const std::int64_t d = fix_boundary(
        static_cast<std::int64_t>(r_hint * 0.70710678118654752440), 0,
        [&](std::int64_t x) { return oracle.contains(2 * x * x, 4); });

    std::int64_t quad2 = 0;  // 2*sum ymax(x) accumulates as sum over x of ymax
    for (std::int64_t x = 1; x <= d; ++x) {
        const double u = s2 - static_cast<double>(x) * x;
        const std::int64_t ymax = fix_boundary(
            static_cast<std::int64_t>(std::sqrt(std::max(u, 0.0))), 0,
            [&](std::int64_t y) {
                return oracle.contains(x * x + y * y, x == y ? 4 : 8);
            });
        quad2 += ymax;
    }
    return 1 + 4 * ax + 4 * (2 * quad2 - d * d);
}

// Plain row sum over all x; identical oracle, no diagonal fold. Used by the
// tests as the in-module cross-check for the folded formula.
std::int64_t count_slice_rowsum(slice_oracle& oracle) {
    if (!oracle.contains(0, 1)) return 0;
    const double s2 = std::max(oracle.s2(), 0.0);
    const std::int64_t ax = fix_boundary(
        static_cast<std::int64_t>(std::sqrt(s2)), 0,
        [&](std::int64_t x) { return oracle.contains(x * x, 2); });
    std::int64_t total = 0;
    for (std::int64_t x = 0; x <= ax; ++x) {
        const double u = s2 - static_cast<double>(x) * x;
        const std::int64_t ymax = fix_boundary(
            static_cast<std::int64_t>(std::sqrt(std::max(u, 0.0))), 0,
            [&](std::int64_t y) {
                return oracle.contains(x * x + y * y, (x ? 2 : 1) * 2);
            });
        total += (x ? 2 : 1) * (2 * ymax + 1);
    }
    return total;
}

struct slice_job_result {
    std::int64_t count = 0;
    std::int64_t flags = 0;
};

}  // namespace

count_result count_points(const body_geometry& g, double t,
                          const count_options& opt) {
    if (!(t >= 0.0)) throw std::invalid_argument("count_points: t >= 0");
    count_result out;
    out.t = t;
    if (t == 0.0) {
        out.count = 1;
        out.per_slice.push_back({0, 1});
        return out;
    }
    const double sq = std::sqrt(t);
    const std::int64_t m_lo =
        static_cast<std::int64_t>(std::ceil(sq * g.z_min() - 1e-12));
    const std::int64_t m_hi =
        static_cast<std::int64_t>(std::floor(sq * g.z_max() + 1e-12));
    const std::int64_t n = m_hi - m_lo + 1;
    if (n <= 0) {
        out.count = 0;
        return out;
    }
    std::vector<slice_job_result> rows(static_cast<std::size_t>(n));
    parallel_chunks(n, 16, opt.workers,
                    [&](std::int64_t b, std::int64_t e, std::size_t) {
                        for (std::int64_t i = b; i < e; ++i) {
                            const std::int64_t m3 = m_lo + i;
                            double z = static_cast<double>(m3) / sq;
                            // m_lo/m_hi carry 1e-12 slop; snap rounding
                            // spill back onto the poles
                            if (z > g.z_max()) {
                                if (z - g.z_max() > 2e-12 * std::max(1.0, std::abs(g.z_max())))
                                    continue;
                                z = g.z_max();
                            } else if (z < g.z_min()) {
                                if (g.z_min() - z > 2e-12 * std::max(1.0, std::abs(g.z_min())))
                                    continue;
                                z = g.z_min();
                            }
                            slice_oracle oracle(g, t, z, opt);
                            rows[static_cast<std::size_t>(i)].count =
                                count_slice(oracle);
                            rows[static_cast<std::size_t>(i)].flags =
                                oracle.flagged();
                        }
                    });
    out.per_slice.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& r = rows[static_cast<std::size_t>(i)];
        out.count += r.count;
        out.boundary_flags += r.flags;
        out.per_slice.push_back({m_lo + i, r.count});
    }
    return out;
}

count_result brute_count(const body_geometry& g, double t,
                         const count_options& opt) {
    if (!(t >= 0.0)) throw std::invalid_argument("brute_count: t >= 0");
    count_result out;
    out.t = t;
    if (t == 0.0) {
        out.count = 1;
        out.per_slice.push_back({0, 1});
        return out;
    }
    const double sq = std::sqrt(t);
    const std::int64_t box =
        static_cast<std::int64_t>(std::floor(sq * g.c2())) + 1;
    const std::int64_t side = 2 * box + 1;
    if (side * side * side > opt.brute_box_limit)
        throw std::invalid_argument("brute_count: box exceeds point budget");

    const double incl_base = opt.include_rel;
    const std::int64_t m_lo =
        static_cast<std::int64_t>(std::ceil(sq * g.z_min() - 1e-12));
    const std::int64_t m_hi =
        static_cast<std::int64_t>(std::floor(sq * g.z_max() + 1e-12));
    for (std::int64_t m3 = std::max(-box, m_lo); m3 <= std::min(box, m_hi);
         ++m3) {
        std::int64_t slice = 0;
        for (std::int64_t m1 = -box; m1 <= box; ++m1) {
            for (std::int64_t m2 = -box; m2 <= box; ++m2) {
                const std::int64_t q = m1 * m1 + m2 * m2 + m3 * m3;
                if (q == 0) {
                    ++slice;
                    continue;
                }
                const double rxy =
                    std::sqrt(static_cast<double>(m1 * m1 + m2 * m2));
                const double theta =
                    std::atan2(rxy, static_cast<double>(m3));
                const double rho = g.profile().rho(theta);
                const double s = t * rho * rho;
                const double band =
                    opt.guard_band_rel * std::max(16.0, s);
                const double qd = static_cast<double>(q);
                bool in;
                if (qd < s - band) {
                    in = true;
                } else if (qd > s + band) {
                    in = false;
                } else {
                    out.boundary_flags += 1;
                    in = qd <= s + incl_base * std::max(1.0, s);
                }
                if (in) ++slice;
            }
        }
        out.per_slice.push_back({m3, slice});
        out.count += slice;
    }
    return out;
}

double trend_normalizer(double t) {
    if (!(t >= 20.0))
        throw std::invalid_argument("trend_normalizer: t >= 20");
    const double l1 = std::log(t);
    const double l2 = std::log(l1);
    const double l3 = std::log(l2);  // positive for t >= 20 > e^e
    const double sqrt2 = 1.41421356237309504880;
    return std::sqrt(t) * std::pow(l1, 1.0 / 3.0) *
           std::pow(l2, 2.0 / 3.0 * (sqrt2 - 1.0)) * std::pow(l3, -2.0 / 3.0);
}

scan_record discrepancy(const body_geometry& g, double t,
                        const count_options& opt) {
    const count_result c = count_points(g, t, opt);
    scan_record r;
    r.t = t;
    r.count = c.count;
    r.volume_term = g.volume() * std::pow(t, 1.5);
    r.discrepancy = static_cast<double>(c.count) - r.volume_term;
    if (t >= 20.0) r.normalized = r.discrepancy / trend_normalizer(t);
    return r;
}

scan_report discrepancy_scan(const body_geometry& g,
                             const std::vector<double>& ts,
                             const count_options& opt) {
    scan_report rep;
    rep.records.reserve(ts.size());
    bool first = true;
    for (const double t : ts) {
        const scan_record r = discrepancy(g, t, opt);
        if (first || r.discrepancy < rep.min_discrepancy) {
            rep.min_discrepancy = r.discrepancy;
            rep.min_discrepancy_t = t;
            first = false;
        }
        rep.records.push_back(r);
    }
    return rep;
}

// test hook: row-sum slice counter sharing the production oracle
std::int64_t detail_count_slice_rowsum(const body_geometry& g, double t,
                                       double z, const count_options& opt) {
    slice_oracle oracle(g, t, z, opt);
    return count_slice_rowsum(oracle);
}
std::int64_t detail_count_slice_folded(const body_geometry& g, double t,
                                       double z, const count_options& opt) {
    slice_oracle oracle(g, t, z, opt);
    return count_slice(oracle);
}

}  // namespace latdisc
