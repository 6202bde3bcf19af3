#include "cpwlat/circuitqed.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace cpwlat::circuitqed {

namespace {
// 2018 SI exact values
constexpr double kElementaryCharge = 1.602176634e-19; // C
constexpr double kPlanck = 6.62607015e-34;            // J s
} // namespace

void TransmonSpec::check() const {
    if (!(ec > 0.0)) fail(Errc::NonPositiveInput, "EC must be positive");
    if (!(ej_sum > 0.0)) fail(Errc::NonPositiveInput, "EJ_sum must be positive");
    if (ej_diff < 0.0 || ej_diff > ej_sum)
        fail(Errc::NonPositiveInput, "EJ_diff must lie in [0, EJ_sum]");
}

double ec_from_capacitance(double c_sigma_ff) {
    if (!(c_sigma_ff > 0.0)) fail(Errc::NonPositiveInput, "capacitance must be positive");
    const double c_farad = c_sigma_ff * 1e-15;
    const double ec_hz = kElementaryCharge * kElementaryCharge / (2.0 * c_farad * kPlanck);
    return ec_hz * 1e-9;
}

double josephson_energy(const TransmonSpec& spec, double flux) {
    spec.check();
    const double c = std::cos(std::numbers::pi * flux);
    const double s = std::sin(std::numbers::pi * flux);
    return std::sqrt(spec.ej_sum * spec.ej_sum * c * c + spec.ej_diff * spec.ej_diff * s * s);
}

double transmon_frequency(const TransmonSpec& spec, double flux) {
    const double ej = josephson_energy(spec, flux);
    if (ej < spec.ec)
        fail(Errc::TransmonApproxInvalid,
             "EJ/EC < 1 at flux " + std::to_string(flux));
    return std::sqrt(8.0 * ej * spec.ec) - spec.ec;
}

double transmon_dfdflux(const TransmonSpec& spec, double flux) {
    const double ej = josephson_energy(spec, flux);
    if (ej < spec.ec)
        fail(Errc::TransmonApproxInvalid, "EJ/EC < 1 at flux " + std::to_string(flux));
    // dEJ/dphi through EJ^2 = EJs^2 cos^2 + EJd^2 sin^2
    const double dej = std::numbers::pi *
                       (spec.ej_diff * spec.ej_diff - spec.ej_sum * spec.ej_sum) *
                       std::sin(2.0 * std::numbers::pi * flux) / (2.0 * ej);
    return std::sqrt(2.0 * spec.ec / ej) * dej;
}

double flux_for_frequency(const TransmonSpec& spec, double f01) {
    spec.check();
    if (!(f01 > 0.0)) fail(Errc::NonPositiveInput, "target frequency must be positive");
    const double ej = (f01 + spec.ec) * (f01 + spec.ec) / (8.0 * spec.ec);
    const double num = ej * ej - spec.ej_diff * spec.ej_diff;
    const double den = spec.ej_sum * spec.ej_sum - spec.ej_diff * spec.ej_diff;
    if (den <= 0.0) fail(Errc::FrequencyOutOfRange, "SQUID is not tunable (EJ_diff = EJ_sum)");
    const double cos2 = num / den;
    if (cos2 < 0.0 || cos2 > 1.0)
        fail(Errc::FrequencyOutOfRange,
             "frequency " + std::to_string(f01) + " GHz is outside the tuning range");
    return std::acos(std::sqrt(cos2)) / std::numbers::pi;
}

double g_scaled(double g_ref, double f_ref_mode, double f_ref_qubit, double f_mode,
                double f_qubit) {
    if (!(g_ref >= 0.0) || !(f_ref_mode > 0.0) || !(f_ref_qubit > 0.0) || !(f_mode > 0.0) ||
        !(f_qubit > 0.0))
        fail(Errc::NonPositiveInput, "g_scaled requires positive frequencies");
    return g_ref * std::sqrt((f_mode * f_qubit) / (f_ref_mode * f_ref_qubit));
}

double dispersive_shift(double g, double delta) {
    if (delta == 0.0) fail(Errc::ZeroDetuning, "dispersive shift diverges at zero detuning");
    return g * g / delta;
}

Eigen::MatrixXd single_excitation_hamiltonian(const Eigen::VectorXd& mode_freqs,
                                              const Eigen::MatrixXd& mode_vectors,
                                              const std::vector<QubitPlacement>& placements,
                                              const std::vector<double>& qubit_freqs) {
    const int nm = static_cast<int>(mode_freqs.size());
    const int nq = static_cast<int>(placements.size());
    if (mode_vectors.cols() != nm)
        fail(Errc::DimensionMismatch, "one eigenvector column required per mode");
    if (static_cast<int>(qubit_freqs.size()) != nq)
        fail(Errc::DimensionMismatch, "one frequency required per qubit placement");
    for (const auto& p : placements) {
        if (p.site < 0 || p.site >= mode_vectors.rows())
            fail(Errc::DimensionMismatch, "placement site outside the lattice");
        if (p.g0 < 0.0) fail(Errc::NonPositiveInput, "g0 must be >= 0");
    }

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nm + nq, nm + nq);
    h.topLeftCorner(nm, nm).diagonal() = mode_freqs;
    for (int j = 0; j < nq; ++j) {
        h(nm + j, nm + j) = qubit_freqs[j];
        for (int k = 0; k < nm; ++k) {
            const double g = placements[j].g0 * mode_vectors(placements[j].site, k);
            h(k, nm + j) = g;
            h(nm + j, k) = g;
        }
    }
    return h;
}

SingleExcitationResult diagonalize_single_excitation(
    const Eigen::VectorXd& mode_freqs, const Eigen::MatrixXd& mode_vectors,
    const std::vector<QubitPlacement>& placements, const std::vector<double>& qubit_freqs) {
    const Eigen::MatrixXd h =
        single_excitation_hamiltonian(mode_freqs, mode_vectors, placements, qubit_freqs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) fail(Errc::NoConvergence, "bordered eigensolver failed");

    const int nm = static_cast<int>(mode_freqs.size());
    const int nq = static_cast<int>(placements.size());
    const int n = nm + nq;
    SingleExcitationResult out;
    out.eigenfrequencies = es.eigenvalues();
    out.qubit_weight.resize(n, nq);
    out.mode_weight.resize(n, nm);
    for (int s = 0; s < n; ++s) {
        for (int j = 0; j < nq; ++j) {
            const double a = es.eigenvectors()(nm + j, s);
            out.qubit_weight(s, j) = a * a;
        }
        for (int k = 0; k < nm; ++k) {
            const double a = es.eigenvectors()(k, s);
            out.mode_weight(s, k) = a * a;
        }
    }
    return out;
}

BoundStateScan bound_states(const lattice::LatticeGraph& lat,
                            const tightbinding::ModeFamily& fam,
                            const std::vector<QubitPlacement>& placements,
                            const std::vector<TransmonSpec>& specs,
                            const std::vector<double>& flux_grid) {
    if (placements.size() != specs.size())
        fail(Errc::DimensionMismatch, "one TransmonSpec required per placement");
    const auto modes = tightbinding::finite_spectrum(lat, fam, /*corrected=*/true);

    BoundStateScan scan;
    scan.flux = flux_grid;
    scan.n_qubits = static_cast<int>(placements.size());
    scan.results.reserve(flux_grid.size());
    scan.bare_qubit_freq.reserve(flux_grid.size() * placements.size());
    for (double phi : flux_grid) {
        std::vector<double> qfreqs(placements.size());
        for (size_t j = 0; j < placements.size(); ++j) {
            qfreqs[j] = transmon_frequency(specs[j], phi);
            scan.bare_qubit_freq.push_back(qfreqs[j]);
        }
        scan.results.push_back(
            diagonalize_single_excitation(modes.values, modes.vectors, placements, qfreqs));
    }
    return scan;
}

double exchange_coupling_perturbative(const Eigen::VectorXd& mode_freqs,
                                      const Eigen::MatrixXd& mode_vectors,
                                      const QubitPlacement& a, const QubitPlacement& b,
                                      double qubit_freq, double min_gap) {
    if (mode_vectors.cols() != mode_freqs.size())
        fail(Errc::DimensionMismatch, "one eigenvector column required per mode");
    if (a.site < 0 || a.site >= mode_vectors.rows() || b.site < 0 ||
        b.site >= mode_vectors.rows())
        fail(Errc::DimensionMismatch, "placement site outside the lattice");
    double j_total = 0.0;
    for (Eigen::Index k = 0; k < mode_freqs.size(); ++k) {
        const double delta = qubit_freq - mode_freqs(k);
        if (std::abs(delta) < min_gap)
            fail(Errc::ResonantMode,
                 "mode at " + std::to_string(mode_freqs(k)) + " GHz is within min_gap");
        j_total += a.g0 * b.g0 * mode_vectors(a.site, k) * mode_vectors(b.site, k) / delta;
    }
    return j_total;
}

CrossingScan avoided_crossing_scan(const lattice::LatticeGraph& lat,
                                   const tightbinding::ModeFamily& fam,
                                   const QubitPlacement& p1, const QubitPlacement& p2,
                                   const TransmonSpec& spec1, const TransmonSpec& spec2,
                                   const std::vector<double>& flux1_grid, double flux2_fixed) {
    const auto modes = tightbinding::finite_spectrum(lat, fam, /*corrected=*/true);
    const double f2 = transmon_frequency(spec2, flux2_fixed);

    CrossingScan scan;
    scan.flux1 = flux1_grid;
    const int n = static_cast<int>(flux1_grid.size());
    scan.branch_freq.resize(n, 2);
    scan.branch_weight.resize(n, 2);
    scan.min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double f1 = transmon_frequency(spec1, flux1_grid[i]);
        const auto res = diagonalize_single_excitation(modes.values, modes.vectors, {p1, p2},
                                                       {f1, f2});
        // two most qubit-like eigenstates, reported in ascending frequency
        const Eigen::VectorXd total_qw = res.qubit_weight.rowwise().sum();
        int best = 0, second = -1;
        for (int s = 1; s < total_qw.size(); ++s)
            if (total_qw(s) > total_qw(best)) best = s;
        for (int s = 0; s < total_qw.size(); ++s) {
            if (s == best) continue;
            if (second < 0 || total_qw(s) > total_qw(second)) second = s;
        }
        int lo = std::min(best, second), hi = std::max(best, second);
        scan.branch_freq(i, 0) = res.eigenfrequencies(lo);
        scan.branch_freq(i, 1) = res.eigenfrequencies(hi);
        scan.branch_weight(i, 0) = total_qw(lo);
        scan.branch_weight(i, 1) = total_qw(hi);
        scan.min_gap = std::min(scan.min_gap,
                                res.eigenfrequencies(hi) - res.eigenfrequencies(lo));
    }
    return scan;
}

} // namespace cpwlat::circuitqed
