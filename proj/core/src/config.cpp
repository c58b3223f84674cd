#include "latdisc/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace latdisc {

namespace {

struct toml_value {
    enum class kind { string, number, boolean, array } k = kind::number;
    std::string str;
    double num = 0.0;
    bool flag = false;
    std::vector<double> arr;
};

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// strips a # comment, honoring quoted strings
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

double parse_number(const std::string& s, const std::string& key) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE)
        fail("key '" + key + "' has a malformed number '" + s + "'");
    return v;
}

toml_value parse_value(const std::string& raw, const std::string& key) {
    toml_value v;
    if (raw.empty()) fail("key '" + key + "' has no value");
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"')
            fail("key '" + key + "' has an unterminated string");
        v.k = toml_value::kind::string;
        v.str = raw.substr(1, raw.size() - 2);
        if (v.str.find('"') != std::string::npos)
            fail("key '" + key + "' has a nested quote");
        return v;
    }
    if (raw == "true" || raw == "false") {
        v.k = toml_value::kind::boolean;
        v.flag = raw == "true";
        return v;
    }
    if (raw.front() == '[') {
        if (raw.back() != ']') fail("key '" + key + "' has an unterminated array");
        v.k = toml_value::kind::array;
        std::string body = raw.substr(1, raw.size() - 2);
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = body.find(',', pos);
            const std::string item =
                trim(body.substr(pos, comma == std::string::npos
                                          ? std::string::npos
                                          : comma - pos));
            if (!item.empty()) v.arr.push_back(parse_number(item, key));
            else if (comma != std::string::npos || !v.arr.empty())
                fail("key '" + key + "' has an empty array element");
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return v;
    }
    v.k = toml_value::kind::number;
    v.num = parse_number(raw, key);
    return v;
}

double want_number(const toml_value& v, const std::string& key) {
    if (v.k != toml_value::kind::number)
        fail("key '" + key + "' must be a number");
    return v.num;
}

std::int64_t want_integer(const toml_value& v, const std::string& key) {
    const double d = want_number(v, key);
    const double r = std::nearbyint(d);
    if (std::fabs(d - r) > 1e-9 || std::fabs(r) > 9.2e18)
        fail("key '" + key + "' must be an integer");
    return static_cast<std::int64_t>(r);
}

std::string want_string(const toml_value& v, const std::string& key) {
    if (v.k != toml_value::kind::string)
        fail("key '" + key + "' must be a quoted string");
    return v.str;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

run_config parse_config_text(const std::string& text) {
    run_config cfg;
    using setter = std::function<void(const toml_value&, const std::string&)>;
    const std::map<std::string, setter> setters = {
        {"body.kind", [&](const toml_value& v, const std::string& k) {
             cfg.body_kind = want_string(v, k);
         }},
        {"body.a", [&](const toml_value& v, const std::string& k) {
             cfg.body_a = want_number(v, k);
         }},
        {"body.b", [&](const toml_value& v, const std::string& k) {
             cfg.body_b = want_number(v, k);
         }},
        {"body.coeffs", [&](const toml_value& v, const std::string& k) {
             if (v.k != toml_value::kind::array)
                 fail("key '" + k + "' must be an array of numbers");
             cfg.body_coeffs = v.arr;
         }},
        {"table_limit", [&](const toml_value& v, const std::string& k) {
             cfg.table_limit = want_integer(v, k);
         }},
        {"guard_band_rel", [&](const toml_value& v, const std::string& k) {
             cfg.guard_band_rel = want_number(v, k);
         }},
        {"include_rel", [&](const toml_value& v, const std::string& k) {
             cfg.include_rel = want_number(v, k);
         }},
        {"eps0", [&](const toml_value& v, const std::string& k) {
             cfg.eps0 = want_number(v, k);
         }},
        {"coeff", [&](const toml_value& v, const std::string& k) {
             cfg.coeff = want_string(v, k);
         }},
        {"borel_nodes", [&](const toml_value& v, const std::string& k) {
             cfg.borel_nodes = want_integer(v, k);
         }},
        {"borel_window", [&](const toml_value& v, const std::string& k) {
             cfg.borel_window = want_number(v, k);
         }},
        {"beta", [&](const toml_value& v, const std::string& k) {
             cfg.beta = want_number(v, k);
         }},
        {"c0", [&](const toml_value& v, const std::string& k) {
             cfg.c0 = want_number(v, k);
         }},
        {"L", [&](const toml_value& v, const std::string& k) {
             cfg.L = want_number(v, k);
         }},
        {"T", [&](const toml_value& v, const std::string& k) {
             cfg.T = want_number(v, k);
         }},
        {"damping_bound", [&](const toml_value& v, const std::string& k) {
             cfg.damping_bound = want_number(v, k);
         }},
        {"f_floor_rel", [&](const toml_value& v, const std::string& k) {
             cfg.f_floor_rel = want_number(v, k);
         }},
        {"search_budget", [&](const toml_value& v, const std::string& k) {
             cfg.search_budget = want_integer(v, k);
         }},
        {"t", [&](const toml_value& v, const std::string& k) {
             cfg.t = want_number(v, k);
         }},
        {"t_min", [&](const toml_value& v, const std::string& k) {
             cfg.t_min = want_number(v, k);
         }},
        {"t_max", [&](const toml_value& v, const std::string& k) {
             cfg.t_max = want_number(v, k);
         }},
        {"t_step", [&](const toml_value& v, const std::string& k) {
             cfg.t_step = want_number(v, k);
         }},
        {"link_n", [&](const toml_value& v, const std::string& k) {
             cfg.link_n = want_integer(v, k);
         }},
        {"workers", [&](const toml_value& v, const std::string& k) {
             cfg.workers = static_cast<int>(want_integer(v, k));
         }},
        {"seed", [&](const toml_value& v, const std::string& k) {
             const std::int64_t s = want_integer(v, k);
             if (s < 0) fail("key '" + k + "' must be non-negative");
             cfg.seed = static_cast<std::uint64_t>(s);
         }},
        {"out", [&](const toml_value& v, const std::string& k) {
             cfg.out = want_string(v, k);
         }},
    };

    std::istringstream in(text);
    std::string raw;
    std::string prefix;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail("line " + std::to_string(lineno) + ": unterminated section");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name != "body")
                fail("unknown section '" + name + "'");
            prefix = name + ".";
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = prefix + trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) fail("unknown key '" + key + "'");
        it->second(parse_value(val, key), key);
    }
    check_config(cfg);
    return cfg;
}

run_config load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void check_config(const run_config& cfg) {
    if (cfg.body_kind != "sphere" && cfg.body_kind != "spheroid" &&
        cfg.body_kind != "fourier")
        fail("body.kind must be sphere, spheroid, or fourier");
    if (!(cfg.body_a > 0.0) || !(cfg.body_b > 0.0))
        fail("spheroid semi-axes must be positive");
    if (cfg.body_coeffs.empty()) fail("body.coeffs must be non-empty");
    if (cfg.table_limit < 2) fail("table_limit must be >= 2");
    if (!(cfg.guard_band_rel > 0.0) || !(cfg.include_rel > 0.0))
        fail("guard-band tolerances must be positive");
    if (!(cfg.eps0 > 0.0 && cfg.eps0 < 0.75)) fail("eps0 must lie in (0, 0.75)");
    if (cfg.coeff != "unit" && cfg.coeff != "curvature")
        fail("coeff must be unit or curvature");
    if (cfg.borel_nodes < 257) fail("borel_nodes must be >= 257");
    if (!(cfg.borel_window > 0.0)) fail("borel_window must be positive");
    if (!(cfg.beta > 0.0)) fail("beta must be positive");
    if (!(cfg.c0 > 0.0)) fail("c0 must be positive");
    if (!(cfg.L >= 2.0)) fail("L must be >= 2");
    if (!(cfg.T >= 3.0)) fail("T must be >= 3");
    if (!(cfg.damping_bound > 0.0)) fail("damping_bound must be positive");
    if (!(cfg.f_floor_rel >= 0.0)) fail("f_floor_rel must be >= 0");
    if (cfg.search_budget < 2) fail("search_budget must be >= 2");
    if (cfg.link_n < 2) fail("link_n must be >= 2");
    if (cfg.workers < 0) fail("workers must be >= 0");
}

std::string canonical_config(const run_config& cfg) {
    // alphabetical by key; arrays in [a, b] form
    std::ostringstream os;
    os << "L = " << g17(cfg.L) << '\n';
    os << "T = " << g17(cfg.T) << '\n';
    os << "beta = " << g17(cfg.beta) << '\n';
    os << "body.a = " << g17(cfg.body_a) << '\n';
    os << "body.b = " << g17(cfg.body_b) << '\n';
    os << "body.coeffs = [";
    for (std::size_t i = 0; i < cfg.body_coeffs.size(); ++i)
        os << (i ? ", " : "") << g17(cfg.body_coeffs[i]);
    os << "]\n";
    os << "body.kind = \"" << cfg.body_kind << "\"\n";
    os << "borel_nodes = " << cfg.borel_nodes << '\n';
    os << "borel_window = " << g17(cfg.borel_window) << '\n';
    os << "c0 = " << g17(cfg.c0) << '\n';
    os << "coeff = \"" << cfg.coeff << "\"\n";
    os << "damping_bound = " << g17(cfg.damping_bound) << '\n';
    os << "eps0 = " << g17(cfg.eps0) << '\n';
    os << "f_floor_rel = " << g17(cfg.f_floor_rel) << '\n';
    os << "guard_band_rel = " << g17(cfg.guard_band_rel) << '\n';
    os << "include_rel = " << g17(cfg.include_rel) << '\n';
    os << "link_n = " << cfg.link_n << '\n';
    os << "out = \"" << cfg.out << "\"\n";
    os << "search_budget = " << cfg.search_budget << '\n';
    os << "seed = " << cfg.seed << '\n';
    os << "t = " << g17(cfg.t) << '\n';
    os << "t_max = " << g17(cfg.t_max) << '\n';
    os << "t_min = " << g17(cfg.t_min) << '\n';
    os << "t_step = " << g17(cfg.t_step) << '\n';
    os << "table_limit = " << cfg.table_limit << '\n';
    os << "workers = " << cfg.workers << '\n';
    return os.str();
}

std::uint64_t config_hash(const run_config& cfg) {
    const std::string text = canonical_config(cfg);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

revolution_profile profile_from(const run_config& cfg) {
    if (cfg.body_kind == "sphere") return revolution_profile::make_sphere();
    if (cfg.body_kind == "spheroid")
        return revolution_profile::make_spheroid(cfg.body_a, cfg.body_b);
    return revolution_profile::make_fourier(cfg.body_coeffs);
}

}  // namespace latdisc
