#pragma once
// CSV emission with reproducibility headers. Every file starts with comment
// lines carrying the library version, the config hash, the fully resolved
// config, and the column schema; numeric cells use %.17g so doubles
// round-trip and outputs are byte-comparable across runs.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "latdisc/config.hpp"

namespace latdisc {

// %.17g rendering (shortest exact round-trip within printf's g17 contract)
std::string g17(double v);

// "# latdisc <version>", "# config_hash=...", "# config: k = v"...,
// "# columns: <columns>", then optional extra comment lines.
void csv_header(std::ostream& os, const run_config& cfg,
                const std::string& columns,
                const std::vector<std::string>& extra = {});

// joins cells with commas and terminates the row
void csv_row(std::ostream& os, const std::vector<std::string>& cells);

}  // namespace latdisc
