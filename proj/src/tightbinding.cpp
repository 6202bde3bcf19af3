#include "cpwlat/tightbinding.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

namespace cpwlat::tightbinding {

namespace {

double end_sign(int end, Parity parity) {
    if (parity == Parity::symmetric) return 1.0;
    return end == 0 ? 1.0 : -1.0;
}

/// Deterministic sign convention: first component of magnitude above tol is
/// made positive. Keeps exported eigenvectors stable across runs.
template <typename Matrix>
void canonicalize_columns(Matrix& vecs) {
    for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
        for (Eigen::Index r = 0; r < vecs.rows(); ++r) {
            const auto v = vecs(r, c);
            if (std::abs(v) > 1e-12) {
                if (std::real(v) < 0.0) vecs.col(c) *= -1.0;
                break;
            }
        }
    }
}

} // namespace

ModeFamily ModeFamily::from_harmonic(int mu, double omega_mu, double t0) {
    ModeFamily fam;
    fam.mu = mu;
    fam.omega_mu = omega_mu;
    fam.t0 = t0;
    fam.parity = (mu % 2 == 0) ? Parity::symmetric : Parity::antisymmetric;
    fam.check();
    return fam;
}

void ModeFamily::check() const {
    if (mu < 1) fail(Errc::InvalidModeFamily, "harmonic index must be >= 1");
    if (!(omega_mu > 0.0)) fail(Errc::InvalidModeFamily, "omega_mu must be positive");
    if (!(std::abs(t0) < omega_mu))
        fail(Errc::InvalidModeFamily, "|t0| must be below omega_mu");
    const Parity expected = (mu % 2 == 0) ? Parity::symmetric : Parity::antisymmetric;
    if (parity != expected)
        fail(Errc::InvalidModeFamily, "parity inconsistent with harmonic index");
}

double hopping_from_circuit(double f1_ghz, int mu, double cc_ff, double z0_ohm) {
    if (!(f1_ghz > 0.0) || mu < 1 || cc_ff < 0.0 || !(z0_ohm > 0.0))
        fail(Errc::NonPositiveInput, "hopping_from_circuit requires positive inputs");
    // GHz * GHz * fF * Ohm = 1e-6 GHz
    return -2.0 * f1_ghz * (mu * f1_ghz) * cc_ff * z0_ohm * 1e-6;
}

Hamiltonian assemble_hamiltonian(const lattice::LatticeGraph& lat, const ModeFamily& fam) {
    fam.check();
    {
        auto diags = lattice::validate(lat);
        if (!diags.empty())
            fail(Errc::InvalidLattice, diags.front().kind + " (" + diags.front().detail + ")");
    }
    const int n = lat.n_sites();
    Hamiltonian h;
    h.matrix = Eigen::MatrixXd::Zero(n, n);
    h.matrix.diagonal().setConstant(fam.omega_mu);
    for (const auto& c : lat.couplers)
        for (size_t a = 0; a < c.members.size(); ++a)
            for (size_t b = a + 1; b < c.members.size(); ++b) {
                const auto& ma = c.members[a];
                const auto& mb = c.members[b];
                const double amp =
                    -end_sign(ma.end, fam.parity) * end_sign(mb.end, fam.parity) * fam.t0;
                h.matrix(ma.site, mb.site) += amp;
                h.matrix(mb.site, ma.site) += amp;
            }
    return h;
}

std::vector<double> uniform_k_grid(int n) {
    std::vector<double> ks(n);
    for (int i = 0; i < n; ++i)
        ks[i] = -std::numbers::pi + (i + 0.5) * 2.0 * std::numbers::pi / n;
    return ks;
}

BandResult bloch_bands(const lattice::UnitCellSpec& cell, const ModeFamily& fam,
                       const std::vector<double>& k_grid) {
    fam.check();
    {
        auto diags = lattice::validate(cell);
        if (!diags.empty())
            fail(Errc::InvalidCell, diags.front().kind + " (" + diags.front().detail + ")");
    }
    for (double k : k_grid)
        if (k < -std::numbers::pi - 1e-12 || k >= std::numbers::pi)
            fail(Errc::InvalidCell, "momentum outside [-pi, pi)");

    const int nb = cell.sites_per_cell;
    const int nk = static_cast<int>(k_grid.size());
    BandResult out;
    out.k_grid = k_grid;
    out.omega_mu = fam.omega_mu;
    out.t0 = fam.t0;
    out.bands_per_cell = nb;
    out.uncorrected.resize(nk, nb);
    out.corrected.resize(nk, nb);
    out.epsilon.resize(nk, nb);
    out.eigenvectors.reserve(nk);

    for (int ik = 0; ik < nk; ++ik) {
        const double k = k_grid[ik];
        Eigen::MatrixXcd hk = Eigen::MatrixXcd::Zero(nb, nb);
        hk.diagonal().setConstant(fam.omega_mu);
        auto add_coupler = [&](const lattice::CellCoupler& c) {
            for (size_t a = 0; a < c.members.size(); ++a)
                for (size_t b = a + 1; b < c.members.size(); ++b) {
                    const auto& ma = c.members[a];
                    const auto& mb = c.members[b];
                    const double amp = -end_sign(ma.end, fam.parity) *
                                       end_sign(mb.end, fam.parity) * fam.t0;
                    const std::complex<double> phase =
                        std::polar(1.0, k * (mb.cell_offset - ma.cell_offset));
                    hk(ma.site, mb.site) += amp * phase;
                    hk(mb.site, ma.site) += amp * std::conj(phase);
                }
        };
        for (const auto& c : cell.intra_couplers) add_coupler(c);
        for (const auto& c : cell.inter_couplers) add_coupler(c);

        if ((hk - hk.adjoint()).cwiseAbs().maxCoeff() != 0.0)
            fail(Errc::NonHermitian, "Bloch matrix assembly broke Hermiticity");

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hk);
        if (es.info() != Eigen::Success) fail(Errc::NoConvergence, "Bloch eigensolver failed");
        Eigen::VectorXd vals = es.eigenvalues();
        Eigen::MatrixXcd vecs = es.eigenvectors();
        canonicalize_columns(vecs);
        for (int b = 0; b < nb; ++b) {
            const double v = vals(b);
            out.uncorrected(ik, b) = v;
            out.epsilon(ik, b) = (fam.t0 != 0.0) ? (v - fam.omega_mu) / fam.t0 : 0.0;
            const double d = v - fam.omega_mu;
            out.corrected(ik, b) = v + d * d / fam.omega_mu;
        }
        out.eigenvectors.push_back(std::move(vecs));
    }
    return out;
}

EigenSystem finite_spectrum(const lattice::LatticeGraph& lat, const ModeFamily& fam,
                            bool corrected) {
    const Hamiltonian h = assemble_hamiltonian(lat, fam);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix);
    if (es.info() != Eigen::Success) fail(Errc::NoConvergence, "dense eigensolver failed");
    EigenSystem out;
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    canonicalize_columns(out.vectors);
    if (corrected)
        for (Eigen::Index i = 0; i < out.values.size(); ++i) {
            const double d = out.values(i) - fam.omega_mu;
            out.values(i) += d * d / fam.omega_mu;
        }
    return out;
}

double frequency_correction(double eigenvalue, const ModeFamily& fam) {
    fam.check();
    if (fam.t0 == 0.0) {
        if (eigenvalue != fam.omega_mu)
            fail(Errc::ZeroHopping, "eigenvalue off omega_mu with zero hopping");
        return fam.omega_mu;
    }
    const double eps_t = eigenvalue - fam.omega_mu; // = epsilon * t0
    return fam.omega_mu + eps_t + eps_t * eps_t / fam.omega_mu;
}

double DosHistogram::integral() const {
    double acc = 0.0;
    for (size_t i = 0; i < density.size(); ++i)
        acc += density[i] * (bin_edges[i + 1] - bin_edges[i]);
    return acc;
}

DosHistogram density_of_states(const BandResult& bands, double bin_width) {
    if (!(bin_width > 0.0)) fail(Errc::NonPositiveInput, "bin_width must be positive");
    DosHistogram dos;
    dos.n_k = static_cast<int>(bands.k_grid.size());
    dos.bands_per_cell = bands.bands_per_cell;
    dos.total_states = dos.n_k * dos.bands_per_cell;
    if (dos.total_states == 0) return dos;

    const double lo = bands.corrected.minCoeff();
    const double hi = bands.corrected.maxCoeff();
    const int n_bins = std::max(1, static_cast<int>(std::ceil((hi - lo) / bin_width)) + 1);
    const double start = lo - 0.5 * bin_width;
    dos.bin_edges.resize(n_bins + 1);
    for (int i = 0; i <= n_bins; ++i) dos.bin_edges[i] = start + i * bin_width;
    dos.density.assign(n_bins, 0.0);

    for (int ik = 0; ik < bands.corrected.rows(); ++ik)
        for (int b = 0; b < bands.corrected.cols(); ++b) {
            int bin = static_cast<int>((bands.corrected(ik, b) - start) / bin_width);
            bin = std::clamp(bin, 0, n_bins - 1);
            dos.density[bin] += 1.0;
        }
    const double norm = 1.0 / (dos.n_k * bin_width);
    for (auto& d : dos.density) d *= norm;
    return dos;
}

std::vector<SupportInterval> band_support(const BandResult& bands, double merge_tol) {
    std::vector<SupportInterval> ranges;
    for (int b = 0; b < bands.corrected.cols(); ++b)
        ranges.push_back({bands.corrected.col(b).minCoeff(), bands.corrected.col(b).maxCoeff()});
    std::sort(ranges.begin(), ranges.end(),
              [](const SupportInterval& a, const SupportInterval& b) { return a.lo < b.lo; });
    std::vector<SupportInterval> merged;
    for (const auto& r : ranges) {
        if (!merged.empty() && r.lo <= merged.back().hi + merge_tol)
            merged.back().hi = std::max(merged.back().hi, r.hi);
        else
            merged.push_back(r);
    }
    return merged;
}

std::vector<double> support_edges(const BandResult& bands, double merge_tol) {
    std::vector<double> edges;
    for (const auto& iv : band_support(bands, merge_tol)) {
        edges.push_back(iv.lo);
        edges.push_back(iv.hi);
    }
    return edges;
}

BandEdgeFit fit_band_edges(const std::vector<EdgeObservation>& observed,
                           const lattice::UnitCellSpec& cell, Parity parity) {
    std::vector<EdgeObservation> obs = observed;
    {
        std::set<double> distinct;
        for (const auto& o : obs) distinct.insert(o.freq_ghz);
        if (distinct.size() < 2)
            fail(Errc::Underdetermined, "need at least 2 distinct observed edges");
    }

    const auto ks = uniform_k_grid(512);
    const int mu = (parity == Parity::symmetric) ? 2 : 1;

    auto model_edges = [&](double omega, double t0) -> std::vector<double> {
        ModeFamily fam;
        fam.mu = mu;
        fam.omega_mu = omega;
        fam.t0 = t0;
        fam.parity = parity;
        fam.check();
        return support_edges(bloch_bands(cell, fam, ks));
    };

    auto residual = [&](double omega, double t0, Eigen::VectorXd& r) -> bool {
        std::vector<double> edges;
        try {
            edges = model_edges(omega, t0);
        } catch (const Error&) {
            return false;
        }
        r.resize(static_cast<Eigen::Index>(obs.size()));
        for (size_t i = 0; i < obs.size(); ++i) {
            if (obs[i].boundary_index < 0 ||
                obs[i].boundary_index >= static_cast<int>(edges.size()))
                return false;
            r(static_cast<Eigen::Index>(i)) = edges[obs[i].boundary_index] - obs[i].freq_ghz;
        }
        return true;
    };

    double lo = obs.front().freq_ghz, hi = obs.front().freq_ghz;
    for (const auto& o : obs) {
        lo = std::min(lo, o.freq_ghz);
        hi = std::max(hi, o.freq_ghz);
    }
    double omega = 0.5 * (lo + hi);
    double t0 = -std::max((hi - lo) / 6.0, 1e-6);

    Eigen::VectorXd r;
    if (!residual(omega, t0, r))
        fail(Errc::NoConvergence, "band-edge fit could not evaluate the initial model");

    BandEdgeFit fit;
    const int max_iter = 100;
    int it = 0;
    for (; it < max_iter; ++it) {
        const double h_om = 1e-7, h_t = 1e-7;
        Eigen::VectorXd r_om, r_t;
        if (!residual(omega + h_om, t0, r_om) || !residual(omega, t0 + h_t, r_t))
            fail(Errc::NoConvergence, "band-edge fit left the valid parameter region");
        Eigen::MatrixXd J(r.size(), 2);
        J.col(0) = (r_om - r) / h_om;
        J.col(1) = (r_t - r) / h_t;
        const Eigen::Vector2d step =
            J.colPivHouseholderQr().solve(-r);

        double lambda = 1.0;
        Eigen::VectorXd r_next;
        bool accepted = false;
        for (int halving = 0; halving < 12; ++halving) {
            if (residual(omega + lambda * step(0), t0 + lambda * step(1), r_next) &&
                r_next.norm() <= r.norm()) {
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted)
            fail(Errc::NoConvergence,
                 "band-edge fit stalled at omega=" + std::to_string(omega) +
                     ", t0=" + std::to_string(t0));
        omega += lambda * step(0);
        t0 += lambda * step(1);
        const double moved = (lambda * step).norm();
        r = r_next;
        if (moved < 1e-12) break;
    }
    if (it == max_iter)
        fail(Errc::NoConvergence, "band-edge fit did not converge in 100 iterations");

    fit.omega_mu = omega;
    fit.t0 = t0;
    fit.rms_residual = std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
    fit.iterations = it + 1;
    return fit;
}

} // namespace cpwlat::tightbinding
