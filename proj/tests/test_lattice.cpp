#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "latdisc/lattice.hpp"
#include "latdisc/numerics.hpp"

using namespace latdisc;

namespace {

body_geometry sphere() {
    return body_geometry::analyze(revolution_profile::make_sphere());
}
body_geometry spheroid() {
    return body_geometry::analyze(revolution_profile::make_spheroid(2.0, 1.0));
}
body_geometry bumpy() {
    return body_geometry::analyze(revolution_profile::make_fourier({1.0, 0.05}));
}

}  // namespace

TEST_CASE("unit sphere counts at small integer dilations") {
    const auto g = sphere();
    CHECK(count_points(g, 0.0).count == 1);
    CHECK(count_points(g, 1.0).count == 7);    // origin + 6 unit vectors
    CHECK(count_points(g, 2.0).count == 19);   // + 12 from norm 2
    CHECK(count_points(g, 3.0).count == 27);   // + 8 from norm 3
    CHECK(count_points(g, 4.0).count == 33);   // + 6 from norm 4
    CHECK(count_points(g, 0.99).count == 1);   // boundary shells excluded
}

TEST_CASE("slice decomposition: per-slice totals add up and pair off") {
    const auto g = spheroid();
    const auto r = count_points(g, 50.0);
    std::int64_t total = 0;
    for (const auto& s : r.per_slice) total += s.second;
    CHECK(total == r.count);
    // m3 -> -m3 symmetry of the even profile
    for (const auto& s : r.per_slice) {
        bool found = false;
        for (const auto& o : r.per_slice)
            if (o.first == -s.first && o.second == s.second) found = true;
        CHECK(found);
    }
}

TEST_CASE("folded slice formula equals the plain row sum") {
    // both helpers take the plane height normalized by sqrt(t)
    const auto g = bumpy();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) {
        const double t = 1.0 + 120.0 * uniform01(rng);
        const double sq = std::sqrt(t);
        const double ztop = std::floor(sq * g.z_max());
        const double m3 =
            std::clamp(std::floor(ztop * (2.0 * uniform01(rng) - 1.0)),
                       -ztop, ztop);
        CHECK(detail_count_slice_folded(g, t, m3 / sq) ==
              detail_count_slice_rowsum(g, t, m3 / sq));
    }
    // exact-tie radii: sphere slices through integer squared radii
    const auto s = sphere();
    for (double t : {25.0, 169.0}) {
        const double sq = std::sqrt(t);
        for (double m3 = 0.0; m3 * m3 <= t; m3 += 1.0) {
            CHECK(detail_count_slice_folded(s, t, m3 / sq) ==
                  detail_count_slice_rowsum(s, t, m3 / sq));
        }
    }
}

TEST_CASE("counts agree with the brute-force box scan") {
    std::mt19937_64 rng(9);
    for (const auto& g : {sphere(), spheroid(), bumpy()}) {
        for (int i = 0; i < 12; ++i) {
            const double t = 0.5 + 80.0 * uniform01(rng);
            const auto fast = count_points(g, t);
            const auto brute = brute_count(g, t);
            CHECK(fast.count == brute.count);
        }
    }
}

TEST_CASE("count is monotone in t") {
    const auto g = bumpy();
    std::int64_t prev = -1;
    for (double t = 0.25; t <= 60.0; t += 0.83) {
        const auto c = count_points(g, t).count;
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("guard band width does not move integer-t counts") {
    const auto g = sphere();
    for (double t : {25.0, 100.0, 169.0}) {
        count_options narrow, wide;
        narrow.guard_band_rel = 1e-9;
        wide.guard_band_rel = 2e-9;
        CHECK(count_points(g, t, narrow).count ==
              count_points(g, t, wide).count);
    }
}

TEST_CASE("exact boundary shells are included: closed membership") {
    // t = 25 sphere: (3,4,0) sits exactly on the boundary, 8-fold per slice
    const auto g = sphere();
    const auto with = count_points(g, 25.0).count;
    const auto below = count_points(g, 24.999999).count;
    // r3(25) = 30 boundary points land inside at exactly t = 25
    CHECK(with - below == 30);
}

TEST_CASE("worker count never changes a count") {
    const auto g = spheroid();
    for (double t : {30.0, 77.3}) {
        count_options w1, w4;
        w1.workers = 1;
        w4.workers = 4;
        const auto a = count_points(g, t, w1);
        const auto b = count_points(g, t, w4);
        CHECK(a.count == b.count);
        CHECK(a.per_slice == b.per_slice);
        CHECK(a.boundary_flags == b.boundary_flags);
    }
}

TEST_CASE("discrepancy records carry the volume term and normalization") {
    const auto g = sphere();
    const auto r = discrepancy(g, 100.0);
    CHECK(r.volume_term ==
          doctest::Approx(g.volume() * 1000.0).epsilon(1e-12));
    CHECK(r.discrepancy ==
          doctest::Approx(static_cast<double>(r.count) - r.volume_term));
    REQUIRE(r.normalized.has_value());
    CHECK(*r.normalized ==
          doctest::Approx(r.discrepancy / trend_normalizer(100.0))
              .epsilon(1e-12));

    const auto early = discrepancy(g, 5.0);
    CHECK_FALSE(early.normalized.has_value());
}

TEST_CASE("trend normalizer composes the three slow factors") {
    const double t = 400.0;
    const double l1 = std::log(t), l2 = std::log(l1), l3 = std::log(l2);
    const double expect = std::sqrt(t) * std::pow(l1, 1.0 / 3.0) *
                          std::pow(l2, 2.0 / 3.0 * (std::sqrt(2.0) - 1.0)) *
                          std::pow(l3, -2.0 / 3.0);
    CHECK(trend_normalizer(t) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("scan tracks the running minimum") {
    const auto g = sphere();
    std::vector<double> ts;
    for (double t = 20.0; t <= 40.0; t += 1.0) ts.push_back(t);
    const auto rep = discrepancy_scan(g, ts);
    REQUIRE(rep.records.size() == ts.size());
    double mn = 1e300, mt = 0.0;
    for (const auto& r : rep.records) {
        if (r.discrepancy < mn) {
            mn = r.discrepancy;
            mt = r.t;
        }
    }
    CHECK(rep.min_discrepancy == mn);
    CHECK(rep.min_discrepancy_t == mt);
}
