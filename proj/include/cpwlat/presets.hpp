#pragma once

#include <string>
#include <vector>

namespace cpwlat::presets {

/// JSON text of the bundled quasi-1D unit cell (versioned asset; the same
/// cell that lattice::quasi1d_cell() constructs).
const char* quasi1d_cell_json();

std::vector<std::string> preset_names();

/// Bundled run-config JSON by name. Throws ConfigError for unknown names.
const char* preset_config(const std::string& name);

} // namespace cpwlat::presets
