#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "latdisc/numerics.hpp"
#include "latdisc/resonance.hpp"

using namespace latdisc;

namespace {

lemma_instance single_class_instance() {
    lemma_instance inst;
    inst.f = {1.0};
    inst.lambda = {1.0};
    inst.M = {0};
    inst.Lambda = 1.0;
    inst.L = 3.0;
    inst.T = 100.0;
    return inst;
}

}  // namespace

TEST_CASE("certificate bound on the single-class instance") {
    const auto inst = single_class_instance();
    const double expect =
        0.125 - 0.5 - 2.0 / (9.869604401089358 * 100.0 * 1.0);
    CHECK(rhs_bound(inst) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(rhs_bound(inst) == doctest::Approx(-0.3770).epsilon(1e-3));
}

TEST_CASE("bound is linear in the weights") {
    auto inst = single_class_instance();
    inst.f.push_back(0.25);
    inst.lambda.push_back(4.0);
    const double base = rhs_bound(inst);
    for (double c : {0.5, 2.0, 7.0}) {
        auto scaled = inst;
        for (auto& v : scaled.f) v *= c;
        CHECK(rhs_bound(scaled) == doctest::Approx(c * base).epsilon(1e-12));
    }
}

TEST_CASE("empty resonant set gives a non-positive bound") {
    auto inst = single_class_instance();
    inst.M.clear();
    CHECK(rhs_bound(inst) <= 0.0);
}

TEST_CASE("hypothesis violations are rejected") {
    auto neg = single_class_instance();
    neg.f[0] = -1.0;
    CHECK_THROWS_AS(rhs_bound(neg), std::invalid_argument);

    auto unsorted = single_class_instance();
    unsorted.f = {1.0, 1.0};
    unsorted.lambda = {2.0, 1.0};
    unsorted.M = {1};
    CHECK_THROWS_AS(rhs_bound(unsorted), std::invalid_argument);

    auto outside = single_class_instance();
    outside.lambda = {3.1};  // above 3 Lambda / 2
    CHECK_THROWS_AS(rhs_bound(outside), std::invalid_argument);

    auto small_L = single_class_instance();
    small_L.L = 1.5;
    CHECK_THROWS_AS(rhs_bound(small_L), std::invalid_argument);

    auto coarse = single_class_instance();
    search_options opt;
    opt.grid_step = 0.3;  // 1/(4 lambda_max) = 0.25
    CHECK_THROWS_AS(search_witness(coarse, opt), std::invalid_argument);
}

TEST_CASE("witness search finds the cosine peak of a pure tone") {
    // single frequency: sum is cos(2 pi t), maximum 1 at integer t
    const auto inst = single_class_instance();
    search_options opt;
    const auto w = search_witness(inst, opt);
    CHECK(w.met);
    CHECK(w.sum_value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w.t == doctest::Approx(std::round(w.t)).epsilon(1e-8));
    CHECK(w.rhs == doctest::Approx(rhs_bound(inst)).epsilon(1e-15));
    CHECK_FALSE(w.capped);
    CHECK(w.searched_lo == doctest::Approx(50.0));
}

TEST_CASE("refined witness dominates every grid sample") {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 10; ++rep) {
        const auto inst = random_lemma_instance(rng, 2, 3.0, 8.0);
        search_options opt;
        opt.sample_stride = 1;
        const auto w = search_witness(inst, opt);
        REQUIRE(!w.samples.empty());
        for (const auto& s : w.samples)
            CHECK(w.sum_value >= s.second - 1e-9);
    }
}

TEST_CASE("sampled trace matches direct evaluation") {
    const auto inst = single_class_instance();
    search_options opt;
    opt.sample_stride = 1000;
    const auto w = search_witness(inst, opt);
    for (const auto& s : w.samples)
        CHECK(s.second == doctest::Approx(lemma_sum(inst, s.first)).epsilon(1e-9));
}

TEST_CASE("witness search is worker-count invariant") {
    std::mt19937_64 rng(5);
    const auto inst = random_lemma_instance(rng, 2, 3.0, 12.0);
    search_options w1, w4;
    w1.workers = 1;
    w4.workers = 4;
    const auto a = search_witness(inst, w1);
    const auto b = search_witness(inst, w4);
    CHECK(a.t == b.t);
    CHECK(a.sum_value == b.sum_value);
    CHECK(a.grid_points == b.grid_points);
}

TEST_CASE("budget cap is honored and reported") {
    std::mt19937_64 rng(6);
    const auto inst = random_lemma_instance(rng, 4, 3.0, 16.0);
    search_options opt;
    opt.budget = 5000;
    const auto w = search_witness(inst, opt);
    CHECK(w.capped);
    CHECK(w.grid_points == 5000);
}

TEST_CASE("seeded random suite: 50 of 50 instances meet the bound") {
    std::mt19937_64 rng(20260816);
    int met = 0;
    for (int i = 0; i < 50; ++i) {
        const auto inst = random_lemma_instance(rng);
        search_options opt;
        opt.stop_at_first_hit = true;
        opt.budget = 4000000000000000000LL;
        const auto w = search_witness(inst, opt);
        met += w.met ? 1 : 0;
    }
    CHECK(met == 50);
}

TEST_CASE("growth exponent values and the optimal parameter") {
    CHECK(growth_exponent(1.0) == doctest::Approx(0.23104906).epsilon(1e-6));
    CHECK(growth_exponent(std::sqrt(2.0)) ==
          doctest::Approx(0.27614237).epsilon(1e-6));
    CHECK(optimal_beta() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    // second-order check: the optimum beats nearby parameters
    CHECK(growth_exponent(std::sqrt(2.0)) > growth_exponent(1.3));
    CHECK(growth_exponent(std::sqrt(2.0)) > growth_exponent(1.5));
}

TEST_CASE("scale selection: exponents and clamping") {
    const auto s = select_lambda(1e4, std::sqrt(2.0), 0.5);
    CHECK(s.l1 == doctest::Approx(std::log(1e4)).epsilon(1e-12));
    CHECK(s.l2 == doctest::Approx(std::log(std::log(1e4))).epsilon(1e-12));
    CHECK(s.l3 ==
          doctest::Approx(std::log(std::log(std::log(1e4)))).epsilon(1e-12));
    CHECK_FALSE(s.clamped);
    // middle exponent at beta = sqrt(2): (1 - b + b log 2b)/3 = 0.352060
    const double b = std::sqrt(2.0);
    const double e2 = (1.0 - b + b * std::log(2.0 * b)) / 3.0;
    CHECK(e2 == doctest::Approx(0.352060).epsilon(1e-5));
    CHECK(s.lambda == doctest::Approx(0.5 * std::pow(s.l1, 1.0 / 3.0) *
                                      std::pow(s.l2, e2) *
                                      std::pow(s.l3, -1.0 / 6.0))
                          .epsilon(1e-12));

    const auto tiny = select_lambda(3.0, std::sqrt(2.0), 0.5);
    CHECK(tiny.clamped);
}

TEST_CASE("resonant class selection has product structure") {
    const auto g = body_geometry::analyze(revolution_profile::make_sphere());
    const auto tab = arith_tables::build(20000);
    const double Lambda = 50.0;
    // cutoff must cover the window: t = 5e4 gives ~7e3 < needed 5258? use 1e5
    const auto s = build_series(g, tab, 63000.0);
    const auto sel = select_resonant_classes(s, g, tab, Lambda,
                                             std::sqrt(2.0));
    CHECK(sel.k == 1);
    CHECK(sel.ell_count > 0);
    CHECK(sel.m3_count > 0);
    CHECK(static_cast<std::int64_t>(sel.indices.size()) ==
          sel.ell_count * sel.m3_count);
    CHECK(sel.lambda_lo >= Lambda / 2 * (1 - 1e-9));
    CHECK(sel.lambda_hi <= 1.5 * Lambda * (1 + 1e-9));
}

TEST_CASE("construction pipeline at desk scale") {
    const auto g = body_geometry::analyze(revolution_profile::make_sphere());
    const auto tab = arith_tables::build(20000);
    pipeline_options opt;
    opt.search.budget = 2000000;
    const auto rep = run_construction(g, tab, 1000.0, std::sqrt(2.0), opt);
    CHECK(rep.scale.lambda > 0.0);
    CHECK(rep.class_count <= rep.class_count_full);
    CHECK(rep.dropped_mass >= 0.0);
    CHECK(rep.dropped_mass < 1e-6);
    CHECK(rep.conforming);  // |M| is tiny at this scale
    CHECK(rep.damping_ok);
    CHECK(rep.witness.met);
    CHECK(rep.rhs <= rep.witness.sum_value);
    CHECK(rep.shape_target > 0.0);
}
