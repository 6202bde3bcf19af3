#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cpwlat/lattice.hpp"

namespace cpwlat::tightbinding {

enum class Parity { symmetric, antisymmetric };

/// One resonator harmonic: on-site frequency omega_mu (GHz), zeroth-order
/// hopping t0 (GHz, negative for capacitive end coupling), and the mode
/// parity that fixes the hopping sign rule. Odd harmonics are antisymmetric,
/// even harmonics symmetric.
struct ModeFamily {
    int mu = 1;
    double omega_mu = 0.0;
    double t0 = 0.0;
    Parity parity = Parity::antisymmetric;

    static ModeFamily from_harmonic(int mu, double omega_mu, double t0);
    void check() const;
};

/// Zeroth-order hopping from circuit parameters, in GHz:
///   t0 = -2 * f1 * (mu * f1) * Cc * Z0   (f1 in GHz, Cc in fF, Z0 in Ohm)
double hopping_from_circuit(double f1_ghz, int mu, double cc_ff, double z0_ohm);

struct Hamiltonian {
    Eigen::MatrixXd matrix; // dense, real symmetric, frequencies in GHz
};

/// Single-excitation matrix of the finite lattice: omega_mu on the diagonal
/// and -s_n s_n' t0 on coupled pairs, where s = +1 for symmetric parity and
/// s = (+1, -1) for ends (0, 1) of an antisymmetric harmonic.
Hamiltonian assemble_hamiltonian(const lattice::LatticeGraph& lat, const ModeFamily& fam);

/// n uniformly spaced momenta in [-pi, pi), midpoint-offset so high-symmetry
/// points are not sampled.
std::vector<double> uniform_k_grid(int n);

struct BandResult {
    std::vector<double> k_grid;
    Eigen::MatrixXd uncorrected; // n_k x n_bands, ascending per row
    Eigen::MatrixXd corrected;
    Eigen::MatrixXd epsilon; // scaling parameter, (uncorrected - omega_mu) / t0
    std::vector<Eigen::MatrixXcd> eigenvectors; // per k, columns in band order
    double omega_mu = 0.0;
    double t0 = 0.0;
    int bands_per_cell = 0;
};

BandResult bloch_bands(const lattice::UnitCellSpec& cell, const ModeFamily& fam,
                       const std::vector<double>& k_grid);

struct EigenSystem {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // column i belongs to values[i], site-indexed rows
};

EigenSystem finite_spectrum(const lattice::LatticeGraph& lat, const ModeFamily& fam,
                            bool corrected);

/// First-order frequency correction: with eps = (eigenvalue - omega_mu)/t0,
/// returns omega_mu + eps*t0 + (eps*t0)^2/omega_mu.
double frequency_correction(double eigenvalue, const ModeFamily& fam);

struct DosHistogram {
    std::vector<double> bin_edges; // size n_bins + 1
    std::vector<double> density;   // states per cell per GHz
    int total_states = 0;
    int n_k = 0;
    int bands_per_cell = 0;

    double integral() const;
};

/// Histogram of the corrected eigenvalues over the k grid, normalized so the
/// integral equals bands-per-cell.
DosHistogram density_of_states(const BandResult& bands, double bin_width);

struct SupportInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Union of per-band [min, max] ranges, merging intervals closer than
/// merge_tol (absorbs sampling gaps at band crossings).
std::vector<SupportInterval> band_support(const BandResult& bands, double merge_tol = 1e-3);

/// Flattened sorted boundary list of band_support: lo0, hi0, lo1, hi1, ...
std::vector<double> support_edges(const BandResult& bands, double merge_tol = 1e-3);

/// An observed band edge. boundary_index selects which entry of the model's
/// support_edges list this observation pins down.
struct EdgeObservation {
    double freq_ghz = 0.0;
    int boundary_index = 0;
};

struct BandEdgeFit {
    double omega_mu = 0.0;
    double t0 = 0.0;
    double rms_residual = 0.0;
    int iterations = 0;
};

/// Least-squares fit of (omega_mu, t0) so the corrected Bloch support edges
/// match the observations; Gauss-Newton on a 512-point k grid.
BandEdgeFit fit_band_edges(const std::vector<EdgeObservation>& observed,
                           const lattice::UnitCellSpec& cell, Parity parity);

} // namespace cpwlat::tightbinding
