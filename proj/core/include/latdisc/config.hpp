#pragma once
// Run configuration: a flat TOML subset (one optional [body] section,
// key = value pairs, # comments, numbers, strings, booleans, flat numeric
// arrays). Every field has a default; unknown keys are rejected so typos
// cannot silently fall back. The canonical serialization is echoed into every
// output header and hashed for reproducibility metadata.

#include <cstdint>
#include <string>
#include <vector>

#include "latdisc/profile.hpp"

namespace latdisc {

struct run_config {
    // [body] section
    std::string body_kind = "sphere";  // sphere | spheroid | fourier
    double body_a = 2.0;               // spheroid equatorial semi-axis
    double body_b = 1.0;               // spheroid polar semi-axis
    std::vector<double> body_coeffs = {1.0, 0.05};  // fourier c0, c2, c4, ...

    // arithmetic tables
    std::int64_t table_limit = 200000;

    // counting tolerances
    double guard_band_rel = 1e-9;
    double include_rel = 1e-10;

    // spectral series
    double eps0 = 0.3;
    std::string coeff = "unit";  // unit | curvature

    // Borel averaging
    std::int64_t borel_nodes = 65537;
    double borel_window = 8.0;

    // resonance construction
    double beta = 1.4142135623730951;
    double c0 = 0.5;
    double L = 3.0;
    double T = 10000.0;
    double damping_bound = 10.0;
    double f_floor_rel = 1e-12;
    std::int64_t search_budget = 20000000;

    // evaluation grids
    double t = 100.0;
    double t_min = 20.0;
    double t_max = 200.0;
    double t_step = 1.0;
    std::int64_t link_n = 20;

    // execution
    int workers = 0;  // 0 = all hardware threads
    std::uint64_t seed = 1;
    std::string out;  // output CSV path; empty = stdout
};

// Parses TOML-subset text over the defaults. Unknown keys, malformed lines,
// and type mismatches throw std::invalid_argument naming the offender.
run_config parse_config_text(const std::string& text);
run_config load_config_file(const std::string& path);

// Basic cross-field sanity (body kind known, positive axes, eps0 range, ...).
// Grid-specific checks (e.g. scan step > 0) live with their subcommands.
void check_config(const run_config& cfg);

// Sorted `key = value` lines, one per field, numbers in %.17g. Identical
// configs serialize identically; the hash is FNV-1a 64 over this text.
std::string canonical_config(const run_config& cfg);
std::uint64_t config_hash(const run_config& cfg);

// Environment variable consulted for a default config path.
inline constexpr const char* config_env_var = "LATDISC_CONFIG";

// Builds the profile described by the [body] section.
revolution_profile profile_from(const run_config& cfg);

}  // namespace latdisc
