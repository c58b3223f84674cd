#include "latdisc/csv.hpp"

#include <cstdio>
#include <sstream>

#include "latdisc/version.hpp"

namespace latdisc {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void csv_header(std::ostream& os, const run_config& cfg,
                const std::string& columns,
                const std::vector<std::string>& extra) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    os << "# latdisc " << version_string << '\n';
    os << "# config_hash=" << hash << '\n';
    std::istringstream lines(canonical_config(cfg));
    std::string line;
    while (std::getline(lines, line)) os << "# config: " << line << '\n';
    for (const auto& e : extra) os << "# " << e << '\n';
    os << "# columns: " << columns << '\n';
    os << columns << '\n';
}

void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

}  // namespace latdisc
