#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cpwlat/circuitqed.hpp"
#include "cpwlat/tightbinding.hpp"

namespace cpwlat::spectra {

/// Input/output port attached to two lattice sites. External rates follow
/// the eigenvector weight at the port sites; kappa0 is the intrinsic
/// linewidth shared by all modes. All rates in GHz; display-grade model.
struct PortCoupling {
    int input_site = 0;
    int output_site = 0;
    double base_rate_in = 1e-3;
    double base_rate_out = 1e-3;
    double kappa0 = 1e-3;

    void check() const;
};

struct TransmissionTrace {
    std::vector<double> freq;                    // GHz
    std::vector<std::complex<double>> amplitude; // dimensionless
};

/// Sum of one complex Lorentzian per mode:
///   a_k(f) = sqrt(rin_k rout_k) sgn(psi_k(in) psi_k(out)) / (i(f - f_k) + kappa_k/2)
/// with rin_k = base_rate_in psi_k(in)^2 and kappa_k = kappa0 + rin_k + rout_k.
TransmissionTrace synth_transmission(const Eigen::VectorXd& eigenfreqs,
                                     const Eigen::MatrixXd& eigenvectors,
                                     const PortCoupling& ports,
                                     const std::vector<double>& freq_grid);

struct FluxMap {
    std::vector<double> flux;
    std::vector<double> freq;
    std::vector<TransmissionTrace> rows; // one trace per flux point
};

FluxMap flux_map(const std::vector<double>& flux,
                 const std::vector<Eigen::VectorXd>& eigenfreqs_per_flux,
                 const std::vector<Eigen::MatrixXd>& eigenvectors_per_flux,
                 const PortCoupling& ports, const std::vector<double>& freq_grid);

// ---- deterministic file export -------------------------------------------

/// Fixed-format float for byte-stable CSV/SVG output.
std::string format_double(double v, int precision = 9);

/// FNV-1a 64-bit; fingerprints config/input text in provenance sidecars.
std::uint64_t fnv1a64(std::string_view data);

/// Writes `<path>.provenance.json` with the tool version and an input hash.
void write_sidecar(const std::filesystem::path& artifact_path, std::string_view input_text);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

std::string bands_csv(const tightbinding::BandResult& bands);
std::string dos_csv(const tightbinding::DosHistogram& dos);
std::string finite_csv(const tightbinding::EigenSystem& sys);
std::string trace_csv(const TransmissionTrace& trace);
std::string map_csv(const FluxMap& map);
std::string boundstates_csv(const circuitqed::BoundStateScan& scan);
std::string crossing_csv(const circuitqed::CrossingScan& scan);

nlohmann::json bands_json(const tightbinding::BandResult& bands);
nlohmann::json dos_json(const tightbinding::DosHistogram& dos);
nlohmann::json trace_json(const TransmissionTrace& trace);
nlohmann::json boundstates_json(const circuitqed::BoundStateScan& scan);

std::string bands_svg(const tightbinding::BandResult& bands);
std::string dos_svg(const tightbinding::DosHistogram& dos);
std::string trace_svg(const TransmissionTrace& trace);
std::string map_svg(const FluxMap& map);
/// Bound-state overlay: marker area tracks the qubit weight of each state.
std::string boundstates_svg(const circuitqed::BoundStateScan& scan);

} // namespace cpwlat::spectra
