#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cpwlat/tightbinding.hpp"

using namespace cpwlat;
using namespace cpwlat::lattice;
using namespace cpwlat::tightbinding;

namespace {

ModeFamily halfwave() { return ModeFamily::from_harmonic(1, 4.889, -0.040); }
ModeFamily fullwave() { return ModeFamily::from_harmonic(2, 9.726, -0.082); }

std::vector<double> sorted(const Eigen::VectorXd& v) {
    std::vector<double> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end());
    return out;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

LatticeGraph two_site_lattice(int end_a, int end_b) {
    LatticeGraph lat;
    lat.boundary = Boundary::hardwall;
    lat.sites.resize(2);
    lat.sites[0].id = 0;
    lat.sites[1].id = 1;
    lat.cell_index = {0, 0};
    Coupler c;
    c.id = 0;
    c.members = {{0, end_a}, {1, end_b}};
    lat.sites[0].coupler_of_end[end_a] = 0;
    lat.sites[1].coupler_of_end[end_b] = 0;
    lat.couplers.push_back(c);
    return lat;
}

} // namespace

TEST_CASE("hopping from circuit parameters") {
    const double t1 = hopping_from_circuit(4.8957, 1, 19.5, 50.0);
    CHECK(t1 == doctest::Approx(-0.0467375).epsilon(1e-6));
    CHECK(std::abs(t1 - (-0.0467)) < 0.0005); // about -47 MHz

    const double t2 = hopping_from_circuit(4.8957, 2, 19.5, 50.0);
    CHECK(t2 == doctest::Approx(2.0 * t1).epsilon(1e-12));
    CHECK(std::abs(t2 - (-0.0935)) < 0.001); // about -94 MHz

    CHECK(hopping_from_circuit(4.8957, 1, 0.0, 50.0) == 0.0);

    try {
        hopping_from_circuit(-1.0, 1, 19.5, 50.0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonPositiveInput);
    }
}

TEST_CASE("mode family validation") {
    CHECK(halfwave().parity == Parity::antisymmetric);
    CHECK(fullwave().parity == Parity::symmetric);
    CHECK_THROWS_AS(ModeFamily::from_harmonic(1, 4.889, -5.0), Error); // |t0| >= omega
    ModeFamily bad = halfwave();
    bad.parity = Parity::symmetric;
    CHECK_THROWS_AS(bad.check(), Error);
}

TEST_CASE("two-site Hamiltonian sign rules") {
    SUBCASE("symmetric family: negative t0 gives positive off-diagonal") {
        auto fam = ModeFamily::from_harmonic(2, 9.726, -0.082);
        const auto h = assemble_hamiltonian(two_site_lattice(0, 0), fam);
        CHECK(h.matrix(0, 1) == doctest::Approx(0.082).epsilon(1e-14));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix);
        CHECK(es.eigenvalues()(0) == doctest::Approx(9.726 - 0.082));
        CHECK(es.eigenvalues()(1) == doctest::Approx(9.726 + 0.082));
    }
    SUBCASE("antisymmetric family with opposite ends flips the sign") {
        auto fam = ModeFamily::from_harmonic(1, 4.889, -0.040);
        const auto h = assemble_hamiltonian(two_site_lattice(0, 1), fam);
        CHECK(h.matrix(0, 1) == doctest::Approx(-0.040).epsilon(1e-14));
    }
    SUBCASE("antisymmetric family with like ends keeps the positive sign") {
        auto fam = ModeFamily::from_harmonic(1, 4.889, -0.040);
        const auto h = assemble_hamiltonian(two_site_lattice(1, 1), fam);
        CHECK(h.matrix(0, 1) == doctest::Approx(0.040).epsilon(1e-14));
    }
}

TEST_CASE("single isolated site gives a 1x1 matrix") {
    LatticeGraph lat;
    lat.sites.resize(1);
    lat.cell_index = {0};
    const auto h = assemble_hamiltonian(lat, fullwave());
    REQUIRE(h.matrix.rows() == 1);
    CHECK(h.matrix(0, 0) == 9.726);
}

TEST_CASE("assembled Hamiltonians are exactly symmetric with omega on the diagonal") {
    const auto lat = build_chain(quasi1d_cell(), 4, Boundary::hardwall);
    for (const auto& fam : {halfwave(), fullwave()}) {
        const auto h = assemble_hamiltonian(lat, fam);
        CHECK((h.matrix - h.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
        for (int i = 0; i < h.matrix.rows(); ++i) CHECK(h.matrix(i, i) == fam.omega_mu);
    }
}

TEST_CASE("flat band pinned at omega - 2|t| with multiplicity 2 for both parities") {
    const auto cell = quasi1d_cell();
    const auto ks = uniform_k_grid(128);
    for (const auto& fam : {halfwave(), fullwave()}) {
        const auto bands = bloch_bands(cell, fam, ks);
        const double flat = fam.omega_mu - 2.0 * std::abs(fam.t0);
        for (int ik = 0; ik < bands.uncorrected.rows(); ++ik) {
            int mult = 0;
            for (int b = 0; b < bands.uncorrected.cols(); ++b)
                mult += std::abs(bands.uncorrected(ik, b) - flat) < 1e-9;
            CHECK(mult == 2);
        }
    }
}

TEST_CASE("half-wave dispersive band touches the flat band at k = 0 exactly") {
    // the midpoint-offset default grid deliberately avoids this point
    const auto bands = bloch_bands(quasi1d_cell(), halfwave(), {0.0});
    const double flat = 4.889 - 2.0 * 0.040;
    int mult = 0;
    for (int b = 0; b < bands.uncorrected.cols(); ++b)
        mult += std::abs(bands.uncorrected(0, b) - flat) < 1e-9;
    CHECK(mult == 3);

    const auto fw = bloch_bands(quasi1d_cell(), fullwave(), {0.0});
    int mult_fw = 0;
    for (int b = 0; b < fw.uncorrected.cols(); ++b)
        mult_fw += std::abs(fw.uncorrected(0, b) - (9.726 - 0.164)) < 1e-9;
    CHECK(mult_fw == 2);
}

TEST_CASE("both parities share the flat-band scaling parameter") {
    const auto ks = uniform_k_grid(64);
    for (const auto& fam : {halfwave(), fullwave()}) {
        const auto bands = bloch_bands(quasi1d_cell(), fam, ks);
        const double flat = fam.omega_mu - 2.0 * std::abs(fam.t0);
        for (int ik = 0; ik < bands.uncorrected.rows(); ++ik)
            for (int b = 0; b < bands.uncorrected.cols(); ++b)
                if (std::abs(bands.uncorrected(ik, b) - flat) < 1e-9)
                    CHECK(bands.epsilon(ik, b) == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("epsilon reconstructs the uncorrected eigenvalue exactly") {
    const auto bands = bloch_bands(quasi1d_cell(), fullwave(), uniform_k_grid(32));
    for (int ik = 0; ik < bands.uncorrected.rows(); ++ik)
        for (int b = 0; b < bands.uncorrected.cols(); ++b)
            CHECK(bands.omega_mu + bands.epsilon(ik, b) * bands.t0 ==
                  doctest::Approx(bands.uncorrected(ik, b)).epsilon(1e-13));
}

TEST_CASE("corrected full-wave flat band lands near 9.5648 GHz") {
    const auto bands = bloch_bands(quasi1d_cell(), fullwave(), uniform_k_grid(256));
    const double flat_corr = bands.corrected.col(0).minCoeff();
    CHECK(flat_corr == doctest::Approx(9.564765371170).epsilon(1e-10));
}

TEST_CASE("zero hopping collapses all bands onto omega_mu") {
    auto fam = fullwave();
    fam.t0 = 0.0;
    const auto bands = bloch_bands(quasi1d_cell(), fam, uniform_k_grid(16));
    CHECK((bands.uncorrected.array() - 9.726).abs().maxCoeff() < 1e-12);
    CHECK((bands.corrected.array() - 9.726).abs().maxCoeff() < 1e-12);
}

TEST_CASE("time reversal: spectra at k and -k coincide") {
    for (double k : {0.3, 1.1, 2.7}) {
        const auto plus = bloch_bands(quasi1d_cell(), halfwave(), {k});
        const auto minus = bloch_bands(quasi1d_cell(), halfwave(), {-k});
        check_close(sorted(plus.uncorrected.row(0)), sorted(minus.uncorrected.row(0)), 1e-12);
    }
}

TEST_CASE("frequency correction basics") {
    const auto fam = fullwave();
    CHECK(frequency_correction(9.726, fam) == 9.726);
    CHECK(frequency_correction(9.562, fam) == doctest::Approx(9.5647653712).epsilon(1e-10));

    auto no_hop = fam;
    no_hop.t0 = 0.0;
    CHECK(frequency_correction(9.726, no_hop) == 9.726);
    try {
        frequency_correction(9.5, no_hop);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroHopping);
    }
}

TEST_CASE("frequency correction is monotone over the physical band range") {
    const auto fam = fullwave();
    double prev = -1e9;
    for (int i = 0; i <= 200; ++i) {
        // eps*t0 spans (-omega/2, omega/2)
        const double eps_t = -0.45 * fam.omega_mu + 0.9 * fam.omega_mu * i / 200.0;
        const double corr = frequency_correction(fam.omega_mu + eps_t, fam);
        CHECK(corr > prev);
        prev = corr;
    }
}

TEST_CASE("gauge invariance under per-site orientation flips") {
    const auto lat = build_chain(quasi1d_cell(), 5, Boundary::hardwall);
    const auto fam = halfwave();
    const auto ref = sorted(finite_spectrum(lat, fam, false).values);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto flipped = lat;
        const int site = static_cast<int>(rng() % flipped.sites.size());
        for (auto& c : flipped.couplers)
            for (auto& m : c.members)
                if (m.site == site) m.end = 1 - m.end;
        std::swap(flipped.sites[site].coupler_of_end[0],
                  flipped.sites[site].coupler_of_end[1]);
        const auto got = sorted(finite_spectrum(flipped, fam, false).values);
        check_close(ref, got, 1e-10);
    }
}

TEST_CASE("finite periodic chain equals the union of Bloch spectra") {
    const auto cell = quasi1d_cell();
    for (int n = 2; n <= 6; ++n) {
        for (const auto& fam : {halfwave(), fullwave()}) {
            const auto lat = build_chain(cell, n, Boundary::periodic);
            const auto fin = sorted(finite_spectrum(lat, fam, false).values);

            std::vector<double> bloch_union;
            for (int m = 0; m < n; ++m) {
                double k = 2.0 * std::numbers::pi * m / n;
                if (k >= std::numbers::pi) k -= 2.0 * std::numbers::pi;
                const auto bands = bloch_bands(cell, fam, {k});
                for (int b = 0; b < bands.uncorrected.cols(); ++b)
                    bloch_union.push_back(bands.uncorrected(0, b));
            }
            std::sort(bloch_union.begin(), bloch_union.end());
            check_close(fin, bloch_union, 1e-9);
        }
    }
}

TEST_CASE("line graph of the periodic root chain matches build_chain") {
    // root cell {L,T,B,R}: rhombus edges, TB diagonal, R-L' link
    const int n = 3;
    RootGraph root;
    root.n_vertices = 4 * n;
    for (int c = 0; c < n; ++c) {
        const int L = 4 * c, T = 4 * c + 1, B = 4 * c + 2, R = 4 * c + 3;
        root.edges.push_back({L, T});
        root.edges.push_back({L, B});
        root.edges.push_back({T, B});
        root.edges.push_back({T, R});
        root.edges.push_back({B, R});
        root.edges.push_back({R, 4 * ((c + 1) % n)});
    }
    const auto from_root = line_graph(root);
    const auto from_cell = build_chain(quasi1d_cell(), n, Boundary::periodic);
    CHECK(from_root.n_sites() == from_cell.n_sites());
    CHECK(from_root.couplers.size() == from_cell.couplers.size());
    for (const auto& fam : {halfwave(), fullwave()}) {
        const auto a = sorted(finite_spectrum(from_root, fam, false).values);
        const auto b = sorted(finite_spectrum(from_cell, fam, false).values);
        check_close(a, b, 1e-10);
    }
}

TEST_CASE("9-cell hardwall chain has midgap edge states") {
    const auto lat = build_chain(quasi1d_cell(), 9, Boundary::hardwall);

    auto outer_weight = [&](const Eigen::VectorXd& vec) {
        double w = 0.0;
        for (int s = 0; s < 54; ++s)
            if (lat.cell_index[s] == 0 || lat.cell_index[s] == 8) w += vec(s) * vec(s);
        return w;
    };

    SUBCASE("half-wave state near 4.849 GHz") {
        const auto sys = finite_spectrum(lat, halfwave(), true);
        bool found = false;
        for (Eigen::Index i = 0; i < sys.values.size(); ++i)
            if (std::abs(sys.values(i) - 4.84933) < 5e-4) {
                found = true;
                CHECK(outer_weight(sys.vectors.col(i)) > 0.5);
            }
        CHECK(found);
    }
    SUBCASE("full-wave state near 9.600 GHz") {
        const auto sys = finite_spectrum(lat, fullwave(), true);
        bool found = false;
        for (Eigen::Index i = 0; i < sys.values.size(); ++i)
            if (std::abs(sys.values(i) - 9.59964) < 5e-4) {
                found = true;
                CHECK(outer_weight(sys.vectors.col(i)) > 0.5);
            }
        CHECK(found);
    }
}

TEST_CASE("density of states integrates to the band count") {
    const auto bands = bloch_bands(quasi1d_cell(), halfwave(), uniform_k_grid(256));
    const auto dos = density_of_states(bands, 0.002);
    CHECK(dos.integral() == doctest::Approx(6.0).epsilon(1e-12));
    for (double d : dos.density) CHECK(d >= 0.0);
}

TEST_CASE("full-wave flat band carries 2 states per cell") {
    const auto bands = bloch_bands(quasi1d_cell(), fullwave(), uniform_k_grid(256));
    const auto dos = density_of_states(bands, 0.001);
    const double flat = 9.564765371170;
    double states = 0.0;
    for (size_t i = 0; i < dos.density.size(); ++i) {
        const double lo = dos.bin_edges[i], hi = dos.bin_edges[i + 1];
        if (hi > flat - 0.002 && lo < flat + 0.002) states += dos.density[i] * (hi - lo);
    }
    CHECK(states == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("DOS completeness holds for random parameter sets") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> om(3.0, 12.0);
    std::uniform_real_distribution<double> tt(0.01, 0.2);
    for (int trial = 0; trial < 20; ++trial) {
        const int mu = 1 + static_cast<int>(rng() % 2);
        const auto fam = ModeFamily::from_harmonic(mu, om(rng), -tt(rng));
        const auto bands = bloch_bands(quasi1d_cell(), fam, uniform_k_grid(64));
        const auto dos = density_of_states(bands, 0.004);
        CHECK(dos.integral() == doctest::Approx(6.0).epsilon(1e-12));
    }
}

TEST_CASE("band support intervals") {
    const auto hw = bloch_bands(quasi1d_cell(), halfwave(), uniform_k_grid(512));
    const auto hw_support = band_support(hw);
    REQUIRE(hw_support.size() == 2);
    CHECK(hw_support[0].lo == doctest::Approx(4.810309).epsilon(1e-5));
    CHECK(hw_support[0].hi == doctest::Approx(4.840057).epsilon(1e-5));
    CHECK(hw_support[1].lo == doctest::Approx(4.889).epsilon(1e-5));
    CHECK(hw_support[1].hi == doctest::Approx(5.021870).epsilon(1e-5));

    const auto fw = bloch_bands(quasi1d_cell(), fullwave(), uniform_k_grid(512));
    const auto fw_support = band_support(fw);
    REQUIRE(fw_support.size() == 3);
    CHECK(fw_support[0].hi - fw_support[0].lo < 1e-9); // gapped flat band
    CHECK(fw_support[1].lo == doctest::Approx(9.625699).epsilon(1e-5));
    CHECK(fw_support[2].hi == doctest::Approx(10.065061).epsilon(1e-5));
}

TEST_CASE("band-edge fit round trip recovers the generating parameters") {
    const auto cell = quasi1d_cell();
    const auto truth = bloch_bands(cell, halfwave(), uniform_k_grid(512));
    const auto edges = support_edges(truth);
    REQUIRE(edges.size() == 4);
    std::vector<EdgeObservation> obs;
    for (int i = 0; i < 4; ++i) obs.push_back({edges[i], i});
    const auto fit = fit_band_edges(obs, cell, Parity::antisymmetric);
    CHECK(std::abs(fit.omega_mu - 4.889) < 1e-6);
    CHECK(std::abs(fit.t0 - (-0.040)) < 1e-6);

    const auto fw_truth = bloch_bands(cell, fullwave(), uniform_k_grid(512));
    const auto fw_edges = support_edges(fw_truth);
    REQUIRE(fw_edges.size() == 6);
    std::vector<EdgeObservation> fw_obs;
    for (int i = 0; i < 6; ++i) fw_obs.push_back({fw_edges[i], i});
    const auto fw_fit = fit_band_edges(fw_obs, cell, Parity::symmetric);
    CHECK(std::abs(fw_fit.omega_mu - 9.726) < 1e-6);
    CHECK(std::abs(fw_fit.t0 - (-0.082)) < 1e-6);
}

TEST_CASE("band-edge fit against the measured half-wave edges") {
    // least squares balances all four edges, so the result sits a few MHz
    // from the devices's headline values
    std::vector<EdgeObservation> obs = {{4.81, 0}, {4.84, 1}, {4.89, 2}, {5.04, 3}};
    const auto fit = fit_band_edges(obs, quasi1d_cell(), Parity::antisymmetric);
    CHECK(std::abs(fit.omega_mu - 4.889) < 0.01);
    CHECK(std::abs(fit.t0 - (-0.040)) < 0.005);
    CHECK(fit.rms_residual < 0.01);
}

TEST_CASE("band-edge fit needs two distinct edges") {
    std::vector<EdgeObservation> obs = {{4.81, 0}};
    try {
        fit_band_edges(obs, quasi1d_cell(), Parity::antisymmetric);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Underdetermined);
    }
    std::vector<EdgeObservation> same = {{4.81, 0}, {4.81, 1}};
    CHECK_THROWS_AS(fit_band_edges(same, quasi1d_cell(), Parity::antisymmetric), Error);
}
