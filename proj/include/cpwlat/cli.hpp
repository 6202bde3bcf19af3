#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpwlat/circuitqed.hpp"
#include "cpwlat/fluxcal.hpp"
#include "cpwlat/lattice.hpp"
#include "cpwlat/spectra.hpp"
#include "cpwlat/tightbinding.hpp"

namespace cpwlat::cli {

struct CircuitInputs {
    double f1_ghz = 0.0;
    double cc_ff = 0.0;
    double z0_ohm = 0.0;
};

struct ModeFamilyConfig {
    int mu = 1;
    std::optional<double> omega_mu_ghz;
    std::optional<double> t0_ghz;
    std::optional<CircuitInputs> circuit;

    tightbinding::ModeFamily resolve() const;
};

struct QubitConfig {
    std::string id;
    int site = 0;
    double g0_ghz = 0.0;
    circuitqed::TransmonSpec transmon;
};

struct FluxGridConfig {
    double start = 0.0;
    double stop = 0.0;
    int points = 1;

    std::vector<double> grid() const;
};

struct CrossingConfig {
    std::vector<double> detunings_ghz;
    double span_milli_flux = 4.0;
    int points = 161;
};

struct FluxcalConfig {
    std::optional<fluxcal::CrosstalkModel> model;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    circuitqed::TransmonSpec transmon;
    std::vector<std::vector<double>> targets;
};

struct RunConfig {
    std::string config_text; // exact input text, fingerprinted in sidecars

    std::string lattice_source = "quasi1d";
    lattice::UnitCellSpec cell;
    int n_cells = 9;
    lattice::Boundary boundary = lattice::Boundary::hardwall;
    bool has_lattice = false;

    std::optional<ModeFamilyConfig> mode_family;
    int k_points = 256;
    double dos_bin_width_ghz = 0.002;

    std::vector<QubitConfig> qubits;
    std::optional<FluxGridConfig> flux_grid;
    std::optional<CrossingConfig> crossing;
    std::optional<FluxcalConfig> fluxcal;

    std::filesystem::path out_dir = "out";
    std::vector<std::string> formats = {"csv", "svg"};
};

/// Parse and validate a config document. Unknown keys anywhere are errors.
RunConfig parse_config(const std::string& json_text);

struct CommandOptions {
    std::filesystem::path out_dir;
    std::vector<std::string> formats;
    std::optional<std::uint64_t> seed;
};

int cmd_bands(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
              bool bands_files, bool dos_files);
int cmd_finite(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_boundstates(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_crossing(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_fluxcal(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_validate(const RunConfig& cfg, std::ostream& out);

/// Full CLI entry point; args excludes the program name.
/// Exit codes: 0 success, 1 configuration, 2 numerical, 3 file I/O.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code_for(Errc code);

} // namespace cpwlat::cli
