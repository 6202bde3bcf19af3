#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cpwlat/tightbinding.hpp"

namespace cpwlat::circuitqed {

/// Flux-tunable transmon: charging energy and the sum/difference Josephson
/// energies of the SQUID junctions, all as ordinary frequencies in GHz.
struct TransmonSpec {
    double ec = 0.0;
    double ej_sum = 0.0;
    double ej_diff = 0.0;

    void check() const;
    /// EJ/EC >= 20 at zero flux; advisory only.
    bool in_transmon_regime() const { return ej_sum / ec >= 20.0; }
};

/// EC = e^2 / (2 C_sigma h), returned in GHz for C_sigma in fF.
double ec_from_capacitance(double c_sigma_ff);

/// Effective Josephson energy at the given flux (flux-quantum units):
/// sqrt(ej_sum^2 cos^2(pi phi) + ej_diff^2 sin^2(pi phi)).
double josephson_energy(const TransmonSpec& spec, double flux);

/// f01 = sqrt(8 EJ(phi) EC) - EC. Throws TransmonApproxInvalid when
/// EJ(phi)/EC < 1, where the expansion breaks down.
double transmon_frequency(const TransmonSpec& spec, double flux);

/// Analytic d f01 / d flux.
double transmon_dfdflux(const TransmonSpec& spec, double flux);

/// Principal-branch inverse of transmon_frequency, returning a flux in
/// [0, 0.5]. Throws FrequencyOutOfRange when unreachable.
double flux_for_frequency(const TransmonSpec& spec, double f01);

/// Coupling rescaled to new mode and qubit frequencies:
/// g_ref * sqrt((f_mode * f_qubit) / (f_ref_mode * f_ref_qubit)).
double g_scaled(double g_ref, double f_ref_mode, double f_ref_qubit, double f_mode,
                double f_qubit);

/// chi = g^2 / delta.
double dispersive_shift(double g, double delta);

struct QubitPlacement {
    std::string id;
    int site = 0;
    double g0 = 0.0; // single-resonator coupling, GHz
};

/// Bordered single-excitation matrix: mode frequencies then qubit
/// frequencies on the diagonal; qubit-mode entries g0_j * psi_k(site_j);
/// no direct qubit-qubit block. mode_vectors holds one orthonormal column
/// per mode, site-indexed rows.
Eigen::MatrixXd single_excitation_hamiltonian(const Eigen::VectorXd& mode_freqs,
                                              const Eigen::MatrixXd& mode_vectors,
                                              const std::vector<QubitPlacement>& placements,
                                              const std::vector<double>& qubit_freqs);

struct SingleExcitationResult {
    Eigen::VectorXd eigenfrequencies; // ascending
    Eigen::MatrixXd qubit_weight;     // n_states x n_qubits
    Eigen::MatrixXd mode_weight;      // n_states x n_modes
};

SingleExcitationResult diagonalize_single_excitation(
    const Eigen::VectorXd& mode_freqs, const Eigen::MatrixXd& mode_vectors,
    const std::vector<QubitPlacement>& placements, const std::vector<double>& qubit_freqs);

struct BoundStateScan {
    std::vector<double> flux;
    std::vector<double> bare_qubit_freq; // per flux, per qubit (row-major)
    std::vector<SingleExcitationResult> results;
    int n_qubits = 0;
};

/// Flux sweep of the qubit(s) against the corrected finite-chain modes of
/// the given lattice. All qubits share the flux grid.
BoundStateScan bound_states(const lattice::LatticeGraph& lat,
                            const tightbinding::ModeFamily& fam,
                            const std::vector<QubitPlacement>& placements,
                            const std::vector<TransmonSpec>& specs,
                            const std::vector<double>& flux_grid);

/// Second-order photon-mediated exchange between two detuned qubits:
/// J = sum_k g0_a g0_b psi_k(x_a) psi_k(x_b) / (f_qubit - f_k).
/// Throws ResonantMode when any mode is within min_gap of the qubit.
double exchange_coupling_perturbative(const Eigen::VectorXd& mode_freqs,
                                      const Eigen::MatrixXd& mode_vectors,
                                      const QubitPlacement& a, const QubitPlacement& b,
                                      double qubit_freq, double min_gap = 1e-6);

struct CrossingScan {
    std::vector<double> flux1;
    Eigen::MatrixXd branch_freq;   // n_flux x 2, the two most qubit-like states
    Eigen::MatrixXd branch_weight; // total qubit weight of those states
    double min_gap = 0.0;
};

CrossingScan avoided_crossing_scan(const lattice::LatticeGraph& lat,
                                   const tightbinding::ModeFamily& fam,
                                   const QubitPlacement& p1, const QubitPlacement& p2,
                                   const TransmonSpec& spec1, const TransmonSpec& spec2,
                                   const std::vector<double>& flux1_grid, double flux2_fixed);

} // namespace cpwlat::circuitqed
