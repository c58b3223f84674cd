// latdisc command-line front end: config loading, subcommand dispatch, CSV
// emission. Numerical work lives in the core library; this file is plumbing.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latdisc/arith.hpp"
#include "latdisc/body.hpp"
#include "latdisc/config.hpp"
#include "latdisc/csv.hpp"
#include "latdisc/lattice.hpp"
#include "latdisc/resonance.hpp"
#include "latdisc/spectrum.hpp"
#include "latdisc/version.hpp"

namespace {

using namespace latdisc;

// output sink: file when a path is configured, stdout otherwise
class sink {
  public:
    explicit sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw std::runtime_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

count_options count_opts(const run_config& cfg) {
    count_options o;
    o.guard_band_rel = cfg.guard_band_rel;
    o.include_rel = cfg.include_rel;
    o.workers = cfg.workers;
    return o;
}

coeff_model model_of(const run_config& cfg) {
    return cfg.coeff == "curvature" ? coeff_model::curvature
                                    : coeff_model::unit;
}

borel_options borel_opts(const run_config& cfg) {
    borel_options o;
    o.nodes = static_cast<int>(cfg.borel_nodes);
    o.window = cfg.borel_window;
    o.workers = cfg.workers;
    o.count = count_opts(cfg);
    return o;
}

int cmd_body_check(const run_config& cfg) {
    const auto p = profile_from(cfg);
    const auto v = validate_profile(p);
    std::cout << "kind = " << p.describe() << '\n';
    std::cout << "accepted = " << fmt_bool(v.accepted) << '\n';
    std::cout << "min_rho = " << g17(v.min_rho) << '\n';
    std::cout << "min_rho_theta = " << g17(v.min_rho_theta) << '\n';
    std::cout << "min_curv_abs = " << g17(v.min_curv_abs) << '\n';
    std::cout << "min_curv_theta = " << g17(v.min_curv_theta) << '\n';
    std::cout << "curv_sign = " << v.curv_sign << '\n';
    std::cout << "sign_change = " << fmt_bool(v.sign_change) << '\n';
    std::cout << "grid = " << v.grid_size << '\n';
    if (!v.accepted) {
        std::cout << "reason = " << v.reason << '\n';
        return 1;
    }
    const auto g = body_geometry::analyze(p);
    std::cout << "volume = " << g17(g.volume()) << '\n';
    std::cout << "c1 = " << g17(g.c1()) << '\n';
    std::cout << "c2 = " << g17(g.c2()) << '\n';
    const auto& rc = g.rect();
    std::cout << "rect = [" << g17(rc.a1) << ", " << g17(rc.a2) << "] x ["
              << g17(rc.a3) << ", " << g17(rc.a4) << "]\n";
    return 0;
}

int cmd_count(const run_config& cfg) {
    const auto g = body_geometry::analyze(profile_from(cfg));
    const auto r = count_points(g, cfg.t, count_opts(cfg));
    std::cout << r.count << '\n';
    return 0;
}

std::vector<double> load_t_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open t-list '" + path + "'");
    std::vector<double> ts;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        double v;
        while (ls >> v) ts.push_back(v);
    }
    if (ts.empty()) throw std::runtime_error("t-list '" + path + "' is empty");
    return ts;
}

int cmd_scan(const run_config& cfg, const std::string& t_list) {
    std::vector<double> ts;
    if (!t_list.empty()) {
        ts = load_t_list(t_list);
    } else {
        if (!(cfg.t_step > 0.0))
            throw std::invalid_argument("config: scan requires t_step > 0");
        if (cfg.t_max < cfg.t_min)
            throw std::invalid_argument("config: scan requires t_max >= t_min");
        for (double t = cfg.t_min; t <= cfg.t_max + 1e-12 * cfg.t_step;
             t += cfg.t_step)
            ts.push_back(t);
    }
    const auto g = body_geometry::analyze(profile_from(cfg));
    const auto rep = discrepancy_scan(g, ts, count_opts(cfg));
    sink out(cfg.out);
    csv_header(out.os(), cfg, "t,count,volume_term,discrepancy,normalized");
    for (const auto& r : rep.records) {
        csv_row(out.os(),
                {g17(r.t), std::to_string(r.count), g17(r.volume_term),
                 g17(r.discrepancy),
                 r.normalized ? g17(*r.normalized) : std::string("nan")});
    }
    out.os() << "# min_discrepancy = " << g17(rep.min_discrepancy)
             << " at t = " << g17(rep.min_discrepancy_t) << '\n';
    return 0;
}

int cmd_arith_table(const run_config& cfg) {
    const auto tab = arith_tables::build(cfg.table_limit);
    sink out(cfg.out);
    csv_header(out.os(), cfg, "n,r2,omega,a1");
    for (std::int64_t n = 0; n <= tab.limit(); ++n) {
        csv_row(out.os(), {std::to_string(n), std::to_string(tab.r2(n)),
                           std::to_string(tab.omega(n)),
                           std::to_string(tab.a1(n) ? 1 : 0)});
    }
    return 0;
}

int cmd_arith_slambda(const run_config& cfg, const std::vector<double>& ls) {
    if (ls.empty())
        throw std::invalid_argument("config: s-lambda needs at least one --lambda");
    const auto g = body_geometry::analyze(profile_from(cfg));
    const auto tab = arith_tables::build(cfg.table_limit);
    const auto& rc = g.rect();
    const auto rep = cardinality_check(tab, ls, cfg.beta, rc.a1, rc.a2);
    sink out(cfg.out);
    csv_header(out.os(), cfg, "lambda,k,cardinality,predicted,ratio");
    for (const auto& r : rep.rows)
        csv_row(out.os(), {g17(r.lambda), std::to_string(r.k),
                           std::to_string(r.exact), g17(r.predicted),
                           g17(r.ratio)});
    out.os() << "# ratio_min = " << g17(rep.ratio_min)
             << ", ratio_max = " << g17(rep.ratio_max) << '\n';
    return 0;
}

int cmd_spectrum(const run_config& cfg) {
    const auto g = body_geometry::analyze(profile_from(cfg));
    const auto tab = arith_tables::build(cfg.table_limit);
    const auto s = build_series(g, tab, cfg.t, model_of(cfg), cfg.eps0);
    sink out(cfg.out);
    char extra[128];
    std::snprintf(extra, sizeof extra, "t = %.17g, X = %.17g, cutoff = %.17g",
                  s.t, s.X, s.cutoff);
    csv_header(out.os(), cfg, "ell,m3,norm2,lambda,g,f", {extra});
    for (std::size_t i = 0; i < s.classes.size(); ++i) {
        const auto& c = s.classes[i];
        csv_row(out.os(), {std::to_string(c.ell), std::to_string(c.m3),
                           std::to_string(c.norm2), g17(c.lambda), g17(c.g),
                           g17(s.f[i])});
    }
    out.os() << "# classes = " << s.classes.size()
             << ", total_f = " << g17(s.total_f) << '\n';
    return 0;
}

int cmd_borel(const run_config& cfg) {
    const auto g = body_geometry::analyze(profile_from(cfg));
    const auto r = borel_mean(g, cfg.t, borel_opts(cfg));
    sink out(cfg.out);
    csv_header(out.os(), cfg, "t,k,X,value,weight_mass,nodes");
    csv_row(out.os(), {g17(r.t), g17(r.k), g17(r.X), g17(r.value),
                       g17(r.weight_mass), std::to_string(r.nodes)});
    return 0;
}

int cmd_link(const run_config& cfg) {
    if (!(cfg.t_max > cfg.t_min))
        throw std::invalid_argument("config: link requires t_max > t_min");
    std::vector<double> ts;
    for (std::int64_t i = 0; i < cfg.link_n; ++i)
        ts.push_back(cfg.t_min + (cfg.t_max - cfg.t_min) *
                                     static_cast<double>(i) /
                                     static_cast<double>(cfg.link_n - 1));
    const auto g = body_geometry::analyze(profile_from(cfg));
    const auto tab = arith_tables::build(cfg.table_limit);
    const auto rep = spectral_link_report(g, tab, ts, model_of(cfg), cfg.eps0,
                                          borel_opts(cfg));
    sink out(cfg.out);
    csv_header(out.os(), cfg, "t,borel,predicted,fitted,residual");
    for (const auto& r : rep.rows)
        csv_row(out.os(), {g17(r.t), g17(r.borel), g17(r.predicted),
                           g17(rep.scale * r.predicted), g17(r.residual)});
    out.os() << "# scale = " << g17(rep.scale)
             << ", pearson = " << g17(rep.pearson) << '\n';
    return 0;
}

void print_pipeline_report(const pipeline_report& r) {
    std::cout << "T = " << g17(r.T) << '\n';
    std::cout << "beta = " << g17(r.beta) << '\n';
    std::cout << "c0 = " << g17(r.c0) << '\n';
    std::cout << "L = " << g17(r.L) << '\n';
    std::cout << "log_L_polylog = " << g17(r.log_L_polylog) << '\n';
    std::cout << "Lambda = " << g17(r.scale.lambda) << '\n';
    std::cout << "log1 = " << g17(r.scale.l1) << ", log2 = " << g17(r.scale.l2)
              << ", log3 = " << g17(r.scale.l3) << '\n';
    std::cout << "scale_clamped = " << fmt_bool(r.scale.clamped) << '\n';
    std::cout << "classes_full = " << r.class_count_full << '\n';
    std::cout << "classes_kept = " << r.class_count << '\n';
    std::cout << "dropped_mass = " << g17(r.dropped_mass) << '\n';
    std::cout << "k = " << r.selection.k
              << ", k_clamped = " << fmt_bool(r.selection.k_clamped) << '\n';
    std::cout << "ell_count = " << r.selection.ell_count << '\n';
    std::cout << "m3_count = " << r.selection.m3_count << '\n';
    std::cout << "M_size = " << r.selection.indices.size() << '\n';
    std::cout << "M_lambda_range = [" << g17(r.selection.lambda_lo) << ", "
              << g17(r.selection.lambda_hi) << "]\n";
    std::cout << "interval_conforming = " << fmt_bool(r.conforming) << '\n';
    std::cout << "log_interval_hi = " << g17(r.log_interval_hi) << '\n';
    std::cout << "damping_max = " << g17(r.damping_max)
              << ", damping_ok = " << fmt_bool(r.damping_ok) << '\n';
    std::cout << "sum_M = " << g17(r.sum_m) << '\n';
    std::cout << "rhs_bound = " << g17(r.rhs) << '\n';
    std::cout << "shape_target = " << g17(r.shape_target)
              << ", shape_clamped = " << fmt_bool(r.shape_clamped) << '\n';
    const auto& w = r.witness;
    std::cout << "witness_t = " << g17(w.t) << '\n';
    std::cout << "witness_sum = " << g17(w.sum_value) << '\n';
    std::cout << "witness_met = " << fmt_bool(w.met) << '\n';
    std::cout << "searched = [" << g17(w.searched_lo) << ", "
              << g17(w.searched_hi) << "]\n";
    std::cout << "search_capped = " << fmt_bool(w.capped) << '\n';
    std::cout << "grid_points = " << w.grid_points << '\n';
    std::cout << "grid_step = " << g17(w.grid_step) << '\n';
}

int cmd_lemma_pipeline(const run_config& cfg) {
    const auto g = body_geometry::analyze(profile_from(cfg));
    const auto tab = arith_tables::build(cfg.table_limit);
    pipeline_options po;
    po.L = cfg.L;
    po.c0 = cfg.c0;
    po.eps0 = cfg.eps0;
    po.model = model_of(cfg);
    po.f_floor_rel = cfg.f_floor_rel;
    po.damping_bound = cfg.damping_bound;
    po.search.budget = cfg.search_budget;
    po.search.workers = cfg.workers;
    const auto rep = run_construction(g, tab, cfg.T, cfg.beta, po);
    print_pipeline_report(rep);
    if (!cfg.out.empty()) {
        // re-run the search with sampling enabled for the CSV trace
        lemma_instance inst;  // rebuilt exactly as the pipeline saw it
        const auto s = build_series(g, tab, cfg.T, po.model, po.eps0);
        const auto sel =
            select_resonant_classes(s, g, tab, rep.scale.lambda, cfg.beta);
        double fmax = 0.0;
        for (double v : s.f) fmax = std::max(fmax, v);
        std::vector<char> keep(s.f.size(), 0);
        for (std::size_t i = 0; i < s.f.size(); ++i)
            if (s.f[i] >= po.f_floor_rel * fmax) keep[i] = 1;
        for (std::size_t i : sel.indices) keep[i] = 1;
        std::vector<std::size_t> remap(s.f.size(), 0);
        inst.Lambda = rep.scale.lambda;
        inst.L = cfg.L;
        inst.T = cfg.T;
        for (std::size_t i = 0; i < s.f.size(); ++i) {
            if (!keep[i]) continue;
            remap[i] = inst.f.size();
            inst.f.push_back(s.f[i]);
            inst.lambda.push_back(s.classes[i].lambda);
        }
        for (std::size_t i : sel.indices) inst.M.push_back(remap[i]);
        search_options so = po.search;
        so.sample_stride =
            std::max<std::int64_t>(1, rep.witness.grid_points / 10000);
        const auto w = search_witness(inst, so);
        sink out(cfg.out);
        char extra[96];
        std::snprintf(extra, sizeof extra, "sample_stride = %lld",
                      static_cast<long long>(so.sample_stride));
        csv_header(out.os(), cfg, "t,sum", {extra});
        for (const auto& s2 : w.samples)
            csv_row(out.os(), {g17(s2.first), g17(s2.second)});
    }
    return rep.witness.met ? 0 : 3;
}

int cmd_lemma_suite(const run_config& cfg, int cases) {
    std::mt19937_64 rng(cfg.seed);
    std::cout << "seed = " << cfg.seed << '\n';
    std::cout << "cases = " << cases << '\n';
    int passed = 0;
    for (int i = 0; i < cases; ++i) {
        const auto inst = random_lemma_instance(rng);
        search_options so;
        so.stop_at_first_hit = true;
        so.budget = 4000000000000000000LL;  // first-hit; never truncates
        so.workers = cfg.workers;
        const auto w = search_witness(inst, so);
        passed += w.met ? 1 : 0;
        std::cout << "case " << i << ": met = " << fmt_bool(w.met)
                  << ", t = " << g17(w.t) << ", sum = " << g17(w.sum_value)
                  << ", rhs = " << g17(w.rhs) << '\n';
    }
    std::cout << "passed = " << passed << " / " << cases << '\n';
    return passed == cases ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice discrepancy workbench"};
    app.set_version_flag("--version", latdisc::version_string);
    app.require_subcommand(1);

    std::string config_path;
    std::string body_kind, coeff, out;
    double a = 0, b = 0, eps0 = 0, beta = 0, c0 = 0, L = 0, T = 0;
    std::vector<double> coeffs;
    std::int64_t table_limit = 0, budget = 0, nodes = 0;
    int workers = -1;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path,
                   "TOML config file (default: $LATDISC_CONFIG)");
    app.add_option("--body", body_kind, "sphere | spheroid | fourier");
    app.add_option("--a", a, "spheroid equatorial semi-axis");
    app.add_option("--b", b, "spheroid polar semi-axis");
    app.add_option("--coeffs", coeffs, "fourier cosine coefficients")
        ->delimiter(',');
    app.add_option("--table-limit", table_limit, "arithmetic table size");
    app.add_option("--workers", workers, "worker threads (0 = all)");
    app.add_option("--seed", seed, "rng seed for the randomized suite");
    app.add_option("--out", out, "output CSV path (default stdout)");

    auto* sc_body = app.add_subcommand("body", "profile validation report");
    sc_body->add_subcommand("check", "validate the configured profile");
    sc_body->require_subcommand(1);

    double t_flag = 0;
    auto* sc_count = app.add_subcommand("count", "lattice points at one t");
    sc_count->add_option("--t", t_flag, "dilation parameter");

    double t_min = 0, t_max = 0, t_step = 0;
    std::string t_list;
    auto* sc_scan = app.add_subcommand("scan", "discrepancy scan CSV");
    sc_scan->add_option("--t-min", t_min, "grid start");
    sc_scan->add_option("--t-max", t_max, "grid end");
    sc_scan->add_option("--step", t_step, "grid step (> 0)");
    sc_scan->add_option("--t-list", t_list, "file with explicit t values");

    auto* sc_arith = app.add_subcommand("arith", "arithmetic tables");
    auto* sc_arith_table =
        sc_arith->add_subcommand("table", "emit n,r2,omega,a1 CSV");
    sc_arith_table->add_option("--limit", table_limit, "table size");
    std::vector<double> lambdas;
    auto* sc_arith_sl = sc_arith->add_subcommand(
        "s-lambda", "resonant-window cardinality vs prediction");
    sc_arith_sl->add_option("--lambda", lambdas, "window scales");
    sc_arith_sl->add_option("--beta", beta, "prime-count parameter");
    sc_arith->require_subcommand(1);

    auto* sc_spectrum = app.add_subcommand("spectrum", "frequency class CSV");
    sc_spectrum->add_option("--t", t_flag, "dilation parameter");
    sc_spectrum->add_option("--coeff", coeff, "unit | curvature");
    sc_spectrum->add_option("--eps0", eps0, "cutoff exponent");

    auto* sc_borel = app.add_subcommand("borel", "Gamma-averaged discrepancy");
    sc_borel->add_option("--t", t_flag, "dilation parameter");
    sc_borel->add_option("--nodes", nodes, "quadrature node floor");

    auto* sc_link = app.add_subcommand("link", "averaged count vs series CSV");
    sc_link->add_option("--t-min", t_min, "grid start");
    sc_link->add_option("--t-max", t_max, "grid end");
    std::int64_t link_n = 0;
    sc_link->add_option("--n", link_n, "grid size");
    sc_link->add_option("--coeff", coeff, "unit | curvature");

    auto* sc_lemma = app.add_subcommand("lemma", "resonance certificate");
    auto* sc_lemma_search =
        sc_lemma->add_subcommand("search", "witness search from config");
    auto* sc_lemma_pipe =
        sc_lemma->add_subcommand("pipeline", "full construction at T");
    for (auto* sc : {sc_lemma_search, sc_lemma_pipe}) {
        sc->add_option("--T", T, "target scale");
        sc->add_option("--beta", beta, "prime-count parameter");
        sc->add_option("--L", L, "separation parameter (>= 2)");
        sc->add_option("--c0", c0, "window scale constant");
        sc->add_option("--budget", budget, "max grid points");
    }
    int suite_cases = 50;
    auto* sc_lemma_suite =
        sc_lemma->add_subcommand("suite", "randomized property suite");
    sc_lemma_suite->add_option("--cases", suite_cases, "instance count");
    sc_lemma->require_subcommand(1);

    // let global flags appear after the subcommand name
    for (auto* sc : app.get_subcommands(nullptr)) {
        sc->fallthrough();
        for (auto* nested : sc->get_subcommands(nullptr)) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // contract: usage errors exit 2
    }

    try {
        latdisc::run_config cfg;
        if (!config_path.empty()) {
            cfg = latdisc::load_config_file(config_path);
        } else if (const char* env = std::getenv(latdisc::config_env_var)) {
            if (env[0] != '\0') cfg = latdisc::load_config_file(env);
        }
        if (app.count("--body")) cfg.body_kind = body_kind;
        if (app.count("--a")) cfg.body_a = a;
        if (app.count("--b")) cfg.body_b = b;
        if (app.count("--coeffs")) cfg.body_coeffs = coeffs;
        if (app.count("--table-limit")) cfg.table_limit = table_limit;
        if (app.count("--workers")) cfg.workers = workers;
        if (app.count("--seed")) cfg.seed = seed;
        if (app.count("--out")) cfg.out = out;

        if (sc_count->count("--t")) cfg.t = t_flag;
        if (sc_spectrum->count("--t")) cfg.t = t_flag;
        if (sc_borel->count("--t")) cfg.t = t_flag;
        if (sc_spectrum->count("--coeff") || sc_link->count("--coeff"))
            cfg.coeff = coeff;
        if (sc_spectrum->count("--eps0")) cfg.eps0 = eps0;
        if (sc_borel->count("--nodes")) cfg.borel_nodes = nodes;
        if (sc_scan->count("--t-min")) cfg.t_min = t_min;
        if (sc_scan->count("--t-max")) cfg.t_max = t_max;
        if (sc_scan->count("--step")) cfg.t_step = t_step;
        if (sc_link->count("--t-min")) cfg.t_min = t_min;
        if (sc_link->count("--t-max")) cfg.t_max = t_max;
        if (sc_link->count("--n")) cfg.link_n = link_n;
        if (sc_arith_table->count("--limit")) cfg.table_limit = table_limit;
        if (sc_arith_sl->count("--beta")) cfg.beta = beta;
        for (auto* sc : {sc_lemma_search, sc_lemma_pipe}) {
            if (sc->count("--T")) cfg.T = T;
            if (sc->count("--beta")) cfg.beta = beta;
            if (sc->count("--L")) cfg.L = L;
            if (sc->count("--c0")) cfg.c0 = c0;
            if (sc->count("--budget")) cfg.search_budget = budget;
        }
        latdisc::check_config(cfg);

        if (app.got_subcommand(sc_body)) return cmd_body_check(cfg);
        if (app.got_subcommand(sc_count)) return cmd_count(cfg);
        if (app.got_subcommand(sc_scan)) return cmd_scan(cfg, t_list);
        if (app.got_subcommand(sc_arith)) {
            if (sc_arith->got_subcommand(sc_arith_table))
                return cmd_arith_table(cfg);
            return cmd_arith_slambda(cfg, lambdas);
        }
        if (app.got_subcommand(sc_spectrum)) return cmd_spectrum(cfg);
        if (app.got_subcommand(sc_borel)) return cmd_borel(cfg);
        if (app.got_subcommand(sc_link)) return cmd_link(cfg);
        if (app.got_subcommand(sc_lemma)) {
            if (sc_lemma->got_subcommand(sc_lemma_suite))
                return cmd_lemma_suite(cfg, suite_cases);
            return cmd_lemma_pipeline(cfg);
        }
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
