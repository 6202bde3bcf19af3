#include "cpwlat/presets.hpp"

#include <map>

#include "cpwlat/errors.hpp"

namespace cpwlat::presets {

const char* quasi1d_cell_json() {
    return R"({
  "name": "quasi1d-rhombus",
  "version": 1,
  "sites_per_cell": 6,
  "couplers": [
    {"members": [{"site": 0, "end": 1, "cell_offset": 0},
                 {"site": 2, "end": 0, "cell_offset": 0},
                 {"site": 3, "end": 0, "cell_offset": 0}]},
    {"members": [{"site": 1, "end": 1, "cell_offset": 0},
                 {"site": 2, "end": 1, "cell_offset": 0},
                 {"site": 4, "end": 0, "cell_offset": 0}]},
    {"members": [{"site": 3, "end": 1, "cell_offset": 0},
                 {"site": 4, "end": 1, "cell_offset": 0},
                 {"site": 5, "end": 0, "cell_offset": 0}]},
    {"members": [{"site": 0, "end": 0, "cell_offset": 1},
                 {"site": 1, "end": 0, "cell_offset": 1},
                 {"site": 5, "end": 1, "cell_offset": 0}]}
  ],
  "tags": {"site_tags": ["off-axis", "off-axis", "on-axis",
                         "off-axis", "off-axis", "on-axis"]}
})";
}

namespace {

const std::map<std::string, const char*>& registry() {
    static const std::map<std::string, const char*> presets = {
        {"halfwave-bands", R"({
  "version": 1,
  "lattice": {"source": "quasi1d", "n_cells": 9, "boundary": "hardwall"},
  "mode_family": {"mu": 1, "omega_mu_ghz": 4.889, "t0_ghz": -0.040},
  "k_points": 512,
  "dos_bin_width_ghz": 0.002
})"},
        {"fullwave-bands", R"({
  "version": 1,
  "lattice": {"source": "quasi1d", "n_cells": 9, "boundary": "hardwall"},
  "mode_family": {"mu": 2, "omega_mu_ghz": 9.726, "t0_ghz": -0.082},
  "k_points": 512,
  "dos_bin_width_ghz": 0.002
})"},
        {"circuit-predicted-bands", R"({
  "version": 1,
  "lattice": {"source": "quasi1d", "n_cells": 9, "boundary": "hardwall"},
  "mode_family": {"mu": 1, "circuit": {"f1_ghz": 4.8957, "cc_ff": 19.5, "z0_ohm": 50.0}},
  "k_points": 512,
  "dos_bin_width_ghz": 0.002
})"},
        {"halfwave-finite", R"({
  "version": 1,
  "lattice": {"source": "quasi1d", "n_cells": 9, "boundary": "hardwall"},
  "mode_family": {"mu": 1, "omega_mu_ghz": 4.889, "t0_ghz": -0.040}
})"},
        {"fullwave-finite", R"({
  "version": 1,
  "lattice": {"source": "quasi1d", "n_cells": 9, "boundary": "hardwall"},
  "mode_family": {"mu": 2, "omega_mu_ghz": 9.726, "t0_ghz": -0.082}
})"},
        {"fullwave-boundstates", R"({
  "version": 1,
  "lattice": {"source": "quasi1d", "n_cells": 9, "boundary": "hardwall"},
  "mode_family": {"mu": 2, "omega_mu_ghz": 9.726, "t0_ghz": -0.082},
  "qubits": [
    {"id": "Q3", "site": 27, "g0_ghz": 0.165,
     "transmon": {"ec_ghz": 0.122, "ej_sum_ghz": 103.0, "ej_diff_ghz": 0.0}}
  ],
  "flux_grid": {"start": -0.3, "stop": 0.3, "points": 201}
})"},
        {"halfwave-crossing", R"({
  "version": 1,
  "lattice": {"source": "quasi1d", "n_cells": 9, "boundary": "hardwall"},
  "mode_family": {"mu": 1, "omega_mu_ghz": 4.889, "t0_ghz": -0.040},
  "qubits": [
    {"id": "Q1", "site": 33, "g0_ghz": 0.0825,
     "transmon": {"ec_ghz": 0.125, "ej_sum_ghz": 100.0, "ej_diff_ghz": 0.0}},
    {"id": "Q2", "site": 26, "g0_ghz": 0.0825,
     "transmon": {"ec_ghz": 0.113, "ej_sum_ghz": 104.0, "ej_diff_ghz": 0.0}}
  ],
  "crossing": {"detunings_ghz": [0.6, 0.45, 0.3], "span_milli_flux": 4.0, "points": 161}
})"},
        {"fullwave-crossing", R"({
  "version": 1,
  "lattice": {"source": "quasi1d", "n_cells": 9, "boundary": "hardwall"},
  "mode_family": {"mu": 2, "omega_mu_ghz": 9.726, "t0_ghz": -0.082},
  "qubits": [
    {"id": "Q1", "site": 33, "g0_ghz": 0.165,
     "transmon": {"ec_ghz": 0.125, "ej_sum_ghz": 100.0, "ej_diff_ghz": 0.0}},
    {"id": "Q2", "site": 26, "g0_ghz": 0.165,
     "transmon": {"ec_ghz": 0.113, "ej_sum_ghz": 104.0, "ej_diff_ghz": 0.0}}
  ],
  "crossing": {"detunings_ghz": [0.6, 0.45, 0.3], "span_milli_flux": 4.0, "points": 161}
})"},
        {"fluxcal-demo", R"({
  "version": 1,
  "fluxcal": {
    "model": {
      "M": [[1.0, 0.031, 0.012], [0.024, 0.93, 0.028], [0.009, 0.035, 1.07]],
      "phi_offsets": [0.11, -0.06, 0.02]
    },
    "noise_sigma": 0.0,
    "transmon": {"ec_ghz": 0.122, "ej_sum_ghz": 103.0, "ej_diff_ghz": 0.0},
    "targets": [[0.1, 0.2, -0.1], [0.25, 0.0, 0.3]]
  }
})"},
        {"fluxcal-identity", R"({
  "version": 1,
  "fluxcal": {
    "model": {
      "M": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
      "phi_offsets": [0.0, 0.0, 0.0]
    },
    "noise_sigma": 0.0,
    "transmon": {"ec_ghz": 0.122, "ej_sum_ghz": 103.0, "ej_diff_ghz": 0.0}
  }
})"},
    };
    return presets;
}

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : registry()) names.push_back(name);
    return names;
}

const char* preset_config(const std::string& name) {
    const auto& presets = registry();
    auto it = presets.find(name);
    if (it == presets.end()) {
        std::string known;
        for (const auto& [n, t] : presets) known += (known.empty() ? "" : ", ") + n;
        fail(Errc::ConfigError, "unknown preset '" + name + "' (available: " + known + ")");
    }
    return it->second;
}

} // namespace cpwlat::presets
