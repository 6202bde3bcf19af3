#include "cpwlat/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cpwlat/presets.hpp"
#include "cpwlat/version.hpp"

namespace cpwlat::cli {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& context) {
    if (!j.is_object()) fail(Errc::ConfigError, context + " must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            fail(Errc::ConfigError, "unknown key '" + key + "' in " + context);
}

template <typename T>
T require(const json& j, const std::string& key, const std::string& context) {
    if (!j.contains(key)) fail(Errc::ConfigError, context + " is missing '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(Errc::ConfigError, "bad value for '" + key + "' in " + context);
    }
}

circuitqed::TransmonSpec parse_transmon(const json& j, const std::string& context) {
    check_keys(j, {"ec_ghz", "ej_sum_ghz", "ej_diff_ghz"}, context);
    circuitqed::TransmonSpec spec;
    spec.ec = require<double>(j, "ec_ghz", context);
    spec.ej_sum = require<double>(j, "ej_sum_ghz", context);
    spec.ej_diff = j.value("ej_diff_ghz", 0.0);
    spec.check();
    return spec;
}

} // namespace

tightbinding::ModeFamily ModeFamilyConfig::resolve() const {
    const bool direct = omega_mu_ghz.has_value() || t0_ghz.has_value();
    if (direct == circuit.has_value())
        fail(Errc::ConfigError,
             "mode_family needs exactly one of (omega_mu_ghz, t0_ghz) or circuit inputs");
    if (direct) {
        if (!omega_mu_ghz || !t0_ghz)
            fail(Errc::ConfigError, "mode_family needs both omega_mu_ghz and t0_ghz");
        return tightbinding::ModeFamily::from_harmonic(mu, *omega_mu_ghz, *t0_ghz);
    }
    const double t0 = tightbinding::hopping_from_circuit(circuit->f1_ghz, mu, circuit->cc_ff,
                                                         circuit->z0_ohm);
    return tightbinding::ModeFamily::from_harmonic(mu, mu * circuit->f1_ghz, t0);
}

std::vector<double> FluxGridConfig::grid() const {
    if (points < 1) fail(Errc::ConfigError, "flux_grid.points must be >= 1");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = (points == 1) ? start : start + (stop - start) * i / (points - 1);
    return g;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(Errc::ConfigError, std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(j,
               {"version", "lattice", "mode_family", "k_points", "dos_bin_width_ghz",
                "qubits", "flux_grid", "crossing", "fluxcal", "output"},
               "config");
    if (require<int>(j, "version", "config") != 1)
        fail(Errc::ConfigError, "unsupported config version (expected 1)");

    RunConfig cfg;
    cfg.config_text = json_text;

    if (j.contains("lattice")) {
        const json& jl = j.at("lattice");
        check_keys(jl, {"source", "n_cells", "boundary"}, "lattice");
        cfg.lattice_source = jl.value("source", std::string("quasi1d"));
        cfg.n_cells = jl.value("n_cells", 9);
        const std::string b = jl.value("boundary", std::string("hardwall"));
        if (b == "hardwall")
            cfg.boundary = lattice::Boundary::hardwall;
        else if (b == "periodic")
            cfg.boundary = lattice::Boundary::periodic;
        else
            fail(Errc::ConfigError, "boundary must be 'hardwall' or 'periodic'");

        if (cfg.lattice_source == "quasi1d") {
            cfg.cell = lattice::quasi1d_cell();
        } else {
            std::ifstream in(cfg.lattice_source);
            if (!in)
                fail(Errc::ConfigError, "lattice file not found: " + cfg.lattice_source);
            std::stringstream ss;
            ss << in.rdbuf();
            json jc;
            try {
                jc = json::parse(ss.str());
            } catch (const json::exception& e) {
                fail(Errc::ConfigError, "lattice file " + cfg.lattice_source +
                                            " is not valid JSON: " + e.what());
            }
            cfg.cell = lattice::cell_from_json(jc);
        }
        cfg.has_lattice = true;
    }

    if (j.contains("mode_family")) {
        const json& jm = j.at("mode_family");
        check_keys(jm, {"mu", "omega_mu_ghz", "t0_ghz", "circuit"}, "mode_family");
        ModeFamilyConfig mf;
        mf.mu = require<int>(jm, "mu", "mode_family");
        if (jm.contains("omega_mu_ghz")) mf.omega_mu_ghz = jm.at("omega_mu_ghz").get<double>();
        if (jm.contains("t0_ghz")) mf.t0_ghz = jm.at("t0_ghz").get<double>();
        if (jm.contains("circuit")) {
            const json& jc = jm.at("circuit");
            check_keys(jc, {"f1_ghz", "cc_ff", "z0_ohm"}, "mode_family.circuit");
            CircuitInputs ci;
            ci.f1_ghz = require<double>(jc, "f1_ghz", "circuit");
            ci.cc_ff = require<double>(jc, "cc_ff", "circuit");
            ci.z0_ohm = require<double>(jc, "z0_ohm", "circuit");
            mf.circuit = ci;
        }
        mf.resolve(); // validate now, fail-closed
        cfg.mode_family = mf;
    }

    cfg.k_points = j.value("k_points", 256);
    if (cfg.k_points < 1) fail(Errc::ConfigError, "k_points must be >= 1");
    cfg.dos_bin_width_ghz = j.value("dos_bin_width_ghz", 0.002);
    if (!(cfg.dos_bin_width_ghz > 0.0))
        fail(Errc::ConfigError, "dos_bin_width_ghz must be positive");

    if (j.contains("qubits")) {
        for (const json& jq : j.at("qubits")) {
            check_keys(jq, {"id", "site", "g0_ghz", "transmon"}, "qubit");
            QubitConfig q;
            q.id = jq.value("id", std::string("Q") + std::to_string(cfg.qubits.size() + 1));
            q.site = require<int>(jq, "site", "qubit");
            q.g0_ghz = require<double>(jq, "g0_ghz", "qubit");
            if (q.g0_ghz < 0.0) fail(Errc::ConfigError, "g0_ghz must be >= 0");
            q.transmon = parse_transmon(jq.at("transmon"), "qubit.transmon");
            cfg.qubits.push_back(q);
        }
    }

    if (j.contains("flux_grid")) {
        const json& jf = j.at("flux_grid");
        check_keys(jf, {"start", "stop", "points"}, "flux_grid");
        FluxGridConfig g;
        g.start = require<double>(jf, "start", "flux_grid");
        g.stop = require<double>(jf, "stop", "flux_grid");
        g.points = require<int>(jf, "points", "flux_grid");
        cfg.flux_grid = g;
    }

    if (j.contains("crossing")) {
        const json& jc = j.at("crossing");
        check_keys(jc, {"detunings_ghz", "span_milli_flux", "points"}, "crossing");
        CrossingConfig c;
        c.detunings_ghz = require<std::vector<double>>(jc, "detunings_ghz", "crossing");
        c.span_milli_flux = jc.value("span_milli_flux", 4.0);
        c.points = jc.value("points", 161);
        if (c.detunings_ghz.empty()) fail(Errc::ConfigError, "crossing needs detunings");
        if (c.points < 3) fail(Errc::ConfigError, "crossing.points must be >= 3");
        cfg.crossing = c;
    }

    if (j.contains("fluxcal")) {
        const json& jf = j.at("fluxcal");
        check_keys(jf, {"model", "noise_sigma", "seed", "transmon", "targets"}, "fluxcal");
        FluxcalConfig f;
        if (jf.contains("model")) f.model = fluxcal::model_from_json(jf.at("model"));
        f.noise_sigma = jf.value("noise_sigma", 0.0);
        f.seed = jf.value("seed", 0ull);
        f.transmon = parse_transmon(jf.at("transmon"), "fluxcal.transmon");
        if (jf.contains("targets"))
            f.targets = jf.at("targets").get<std::vector<std::vector<double>>>();
        cfg.fluxcal = f;
    }

    if (j.contains("output")) {
        const json& jo = j.at("output");
        check_keys(jo, {"dir", "formats"}, "output");
        if (jo.contains("dir")) cfg.out_dir = jo.at("dir").get<std::string>();
        if (jo.contains("formats"))
            cfg.formats = jo.at("formats").get<std::vector<std::string>>();
    }
    for (const auto& f : cfg.formats)
        if (f != "csv" && f != "json" && f != "svg")
            fail(Errc::ConfigError, "unknown output format '" + f + "'");
    return cfg;
}

namespace {

struct Emitter {
    std::filesystem::path dir;
    std::vector<std::string> formats;
    const std::string& input_text;

    bool wants(const std::string& f) const {
        return std::find(formats.begin(), formats.end(), f) != formats.end();
    }
    void emit(const std::string& stem, const std::string& format,
              const std::string& contents) const {
        const auto path = dir / (stem + "." + format);
        spectra::write_text_file(path, contents);
        spectra::write_sidecar(path, input_text);
    }
};

Emitter make_emitter(const RunConfig& cfg, const CommandOptions& opt) {
    Emitter e{opt.out_dir.empty() ? cfg.out_dir : opt.out_dir,
              opt.formats.empty() ? cfg.formats : opt.formats, cfg.config_text};
    std::error_code ec;
    std::filesystem::create_directories(e.dir, ec);
    if (ec) fail(Errc::IoError, "cannot create output directory " + e.dir.string());
    return e;
}

const ModeFamilyConfig& need_mode_family(const RunConfig& cfg) {
    if (!cfg.mode_family) fail(Errc::ConfigError, "config has no mode_family section");
    return *cfg.mode_family;
}

lattice::LatticeGraph need_chain(const RunConfig& cfg) {
    if (!cfg.has_lattice) fail(Errc::ConfigError, "config has no lattice section");
    return lattice::build_chain(cfg.cell, cfg.n_cells, cfg.boundary);
}

std::string ghz(double v) { return spectra::format_double(v, 6); }

} // namespace

int cmd_bands(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
              bool bands_files, bool dos_files) {
    if (!cfg.has_lattice) fail(Errc::ConfigError, "config has no lattice section");
    const auto fam = need_mode_family(cfg).resolve();
    const auto bands =
        tightbinding::bloch_bands(cfg.cell, fam, tightbinding::uniform_k_grid(cfg.k_points));
    const auto dos = tightbinding::density_of_states(bands, cfg.dos_bin_width_ghz);
    const auto emitter = make_emitter(cfg, opt);

    if (bands_files) {
        if (emitter.wants("csv")) emitter.emit("bands", "csv", spectra::bands_csv(bands));
        if (emitter.wants("json"))
            emitter.emit("bands", "json", spectra::bands_json(bands).dump(2) + "\n");
        if (emitter.wants("svg")) emitter.emit("bands", "svg", spectra::bands_svg(bands));
    }
    if (dos_files) {
        if (emitter.wants("csv")) emitter.emit("dos", "csv", spectra::dos_csv(dos));
        if (emitter.wants("json"))
            emitter.emit("dos", "json", spectra::dos_json(dos).dump(2) + "\n");
        if (emitter.wants("svg")) emitter.emit("dos", "svg", spectra::dos_svg(dos));
    }

    out << "mode family mu=" << fam.mu << ": omega_mu=" << ghz(fam.omega_mu)
        << " GHz, t0=" << ghz(fam.t0) << " GHz\n";
    out << "corrected band support (GHz):\n";
    const auto support = tightbinding::band_support(bands);
    for (const auto& iv : support)
        out << "  [" << ghz(iv.lo) << ", " << ghz(iv.hi) << "]\n";
    for (size_t i = 0; i + 1 < support.size(); ++i)
        out << "gap " << i << ": " << ghz(support[i + 1].lo - support[i].hi) << " GHz\n";
    out << "states per cell: " << dos.bands_per_cell
        << ", DOS integral: " << ghz(dos.integral()) << "\n";
    return 0;
}

int cmd_finite(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out) {
    const auto fam = need_mode_family(cfg).resolve();
    const auto lat = need_chain(cfg);
    const auto sys = tightbinding::finite_spectrum(lat, fam, /*corrected=*/true);
    const auto emitter = make_emitter(cfg, opt);
    if (emitter.wants("csv")) emitter.emit("finite", "csv", spectra::finite_csv(sys));
    if (emitter.wants("json")) {
        nlohmann::json j;
        j["freq_GHz"] = std::vector<double>(sys.values.data(),
                                            sys.values.data() + sys.values.size());
        emitter.emit("finite", "json", j.dump(2) + "\n");
    }
    if (emitter.wants("svg")) {
        // histogram rendering of the discrete spectrum
        tightbinding::DosHistogram dos;
        const double lo = sys.values.minCoeff(), hi = sys.values.maxCoeff();
        const double width = std::max((hi - lo) / 200.0, 1e-6);
        dos.bin_edges = {lo};
        while (dos.bin_edges.back() < hi + width) dos.bin_edges.push_back(dos.bin_edges.back() + width);
        dos.density.assign(dos.bin_edges.size() - 1, 0.0);
        for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
            auto bin = static_cast<size_t>((sys.values(i) - lo) / width);
            bin = std::min(bin, dos.density.size() - 1);
            dos.density[bin] += 1.0;
        }
        emitter.emit("finite", "svg", spectra::dos_svg(dos));
    }
    out << lat.n_sites() << " sites, " << sys.values.size() << " eigenvalues in ["
        << ghz(sys.values.minCoeff()) << ", " << ghz(sys.values.maxCoeff()) << "] GHz\n";
    return 0;
}

int cmd_boundstates(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out) {
    if (cfg.qubits.size() != 1)
        fail(Errc::ConfigError, "boundstates needs exactly one configured qubit");
    if (!cfg.flux_grid) fail(Errc::ConfigError, "boundstates needs a flux_grid section");
    const auto fam = need_mode_family(cfg).resolve();
    const auto lat = need_chain(cfg);
    const auto& q = cfg.qubits.front();
    const auto scan = circuitqed::bound_states(
        lat, fam, {{q.id, q.site, q.g0_ghz}}, {q.transmon}, cfg.flux_grid->grid());

    const auto emitter = make_emitter(cfg, opt);
    if (emitter.wants("csv"))
        emitter.emit("boundstates", "csv", spectra::boundstates_csv(scan));
    if (emitter.wants("json"))
        emitter.emit("boundstates", "json", spectra::boundstates_json(scan).dump(2) + "\n");
    if (emitter.wants("svg"))
        emitter.emit("boundstates", "svg", spectra::boundstates_svg(scan));

    double best_w = 0.0, best_f = 0.0, best_phi = 0.0;
    for (size_t i = 0; i < scan.flux.size(); ++i)
        for (Eigen::Index s = 0; s < scan.results[i].eigenfrequencies.size(); ++s)
            if (scan.results[i].qubit_weight(s, 0) > best_w) {
                best_w = scan.results[i].qubit_weight(s, 0);
                best_f = scan.results[i].eigenfrequencies(s);
                best_phi = scan.flux[i];
            }
    out << scan.flux.size() << " flux points, " << scan.results.front().eigenfrequencies.size()
        << " states each; most qubit-like state: " << ghz(best_f) << " GHz (weight "
        << spectra::format_double(best_w, 3) << ") at flux "
        << spectra::format_double(best_phi, 4) << "\n";
    return 0;
}

int cmd_crossing(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out) {
    if (cfg.qubits.size() != 2)
        fail(Errc::ConfigError, "crossing needs exactly two configured qubits");
    if (!cfg.crossing) fail(Errc::ConfigError, "crossing needs a crossing section");
    const auto fam = need_mode_family(cfg).resolve();
    const auto lat = need_chain(cfg);
    const auto bands =
        tightbinding::bloch_bands(cfg.cell, fam, tightbinding::uniform_k_grid(512));
    const double band_lo = tightbinding::band_support(bands).front().lo;

    const auto& q1 = cfg.qubits[0];
    const auto& q2 = cfg.qubits[1];
    const circuitqed::QubitPlacement p1{q1.id, q1.site, q1.g0_ghz};
    const circuitqed::QubitPlacement p2{q2.id, q2.site, q2.g0_ghz};

    const auto emitter = make_emitter(cfg, opt);
    out << "crossing scans below the band edge at " << ghz(band_lo) << " GHz\n";
    out << "detuning_GHz,min_gap_GHz\n";
    std::string svg_acc;
    std::vector<double> min_gaps;
    for (size_t d = 0; d < cfg.crossing->detunings_ghz.size(); ++d) {
        const double det = cfg.crossing->detunings_ghz[d];
        const double target = band_lo - det;
        const double flux2 = circuitqed::flux_for_frequency(q2.transmon, target);
        const double flux1_center = circuitqed::flux_for_frequency(q1.transmon, target);
        const double half_span = cfg.crossing->span_milli_flux * 1e-3;
        std::vector<double> grid(cfg.crossing->points);
        for (int i = 0; i < cfg.crossing->points; ++i)
            grid[i] = flux1_center - half_span +
                      2.0 * half_span * i / (cfg.crossing->points - 1);
        const auto scan = circuitqed::avoided_crossing_scan(lat, fam, p1, p2, q1.transmon,
                                                            q2.transmon, grid, flux2);
        min_gaps.push_back(scan.min_gap);
        out << ghz(det) << "," << spectra::format_double(scan.min_gap, 9) << "\n";
        if (emitter.wants("csv"))
            emitter.emit("crossing_" + std::to_string(d), "csv",
                         spectra::crossing_csv(scan));
    }
    const bool monotone = std::is_sorted(min_gaps.rbegin(), min_gaps.rend());
    out << "min gap " << (monotone ? "increases" : "does not increase")
        << " as detuning decreases\n";
    return 0;
}

int cmd_fluxcal(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out) {
    if (!cfg.fluxcal) fail(Errc::ConfigError, "config has no fluxcal section");
    const auto& fc = *cfg.fluxcal;
    if (!fc.model) fail(Errc::ConfigError, "fluxcal needs a model to demonstrate");

    fluxcal::MeasurementProtocol protocol;
    protocol.noise_sigma = fc.noise_sigma;
    protocol.seed = opt.seed.value_or(fc.seed);
    const int n = fc.model->n();
    const std::vector<circuitqed::TransmonSpec> specs(n, fc.transmon);

    const auto measured = fluxcal::simulate_measurements(*fc.model, specs, protocol);
    const auto calib = fluxcal::calibrate(measured);

    const auto emitter = make_emitter(cfg, opt);
    emitter.emit("crosstalk_model", "json",
                 fluxcal::model_to_json(calib.model).dump(2) + "\n");

    const double m_err = (calib.model.M - fc.model->M).cwiseAbs().maxCoeff();
    const double off_err =
        (calib.model.phi_offsets - fc.model->phi_offsets).cwiseAbs().maxCoeff();
    out << "recovered " << n << "x" << n << " crosstalk model; max |dM| = "
        << spectra::format_double(m_err, 9) << " Phi0/V, max |dphi*| = "
        << spectra::format_double(off_err, 9) << " Phi0\n";
    out << "condition number: " << spectra::format_double(calib.model.condition_number(), 3)
        << "\n";

    for (const auto& target : fc.targets) {
        if (static_cast<int>(target.size()) != n)
            fail(Errc::ConfigError, "fluxcal target length must match the model size");
        Eigen::VectorXd phi = Eigen::Map<const Eigen::VectorXd>(target.data(), n);
        const Eigen::VectorXd v = fluxcal::voltages_for_flux(calib.model, phi);
        const Eigen::VectorXd phi_check = fluxcal::flux_from_voltage(calib.model, v);
        out << "target flux (";
        for (int i = 0; i < n; ++i) out << (i ? "," : "") << spectra::format_double(phi(i), 4);
        out << ") -> voltages (";
        for (int i = 0; i < n; ++i) out << (i ? "," : "") << spectra::format_double(v(i), 6);
        out << "), round-trip error "
            << spectra::format_double((phi_check - phi).cwiseAbs().maxCoeff(), 12) << "\n";
    }
    return 0;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.has_lattice) fail(Errc::ConfigError, "config has no lattice section");
    auto diags = lattice::validate(cfg.cell);
    const auto lat = lattice::build_chain(cfg.cell, cfg.n_cells, cfg.boundary);
    for (const auto& d : lattice::validate(lat)) diags.push_back(d);
    if (diags.empty()) {
        out << "ok: " << lat.n_sites() << " sites, " << lat.couplers.size()
            << " couplers, connected=" << (lattice::is_connected(lat) ? "yes" : "no") << "\n";
        return 0;
    }
    for (const auto& d : diags) out << d.kind << ": " << d.detail << "\n";
    return 1;
}

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::IoError:
            return 3;
        case Errc::NoConvergence:
        case Errc::NonHermitian:
        case Errc::TransmonApproxInvalid:
        case Errc::FrequencyOutOfRange:
        case Errc::ZeroHopping:
        case Errc::Underdetermined:
        case Errc::ZeroDetuning:
        case Errc::ResonantMode:
        case Errc::SingularMatrix:
        case Errc::DegenerateSlope:
            return 2;
        default:
            return 1;
    }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{std::string(kToolName) + " " + kVersion +
                 " - tight-binding and circuit-QED toolkit for CPW resonator lattices"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir;
    std::vector<std::string> formats;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "path to a run-config JSON document");
        sub->add_option("--preset", preset_name, "bundled config name");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", formats, "output formats: csv, json, svg (repeatable)");
        sub->add_option("--seed", seed, "RNG seed (noise demos only)")
            ->each([&](const std::string&) { seed_set = true; });
    };

    CLI::App* sub_bands = app.add_subcommand("bands", "Bloch bands and DOS");
    CLI::App* sub_dos = app.add_subcommand("dos", "density of states only");
    CLI::App* sub_finite = app.add_subcommand("finite", "finite-chain spectrum");
    CLI::App* sub_bound = app.add_subcommand("boundstates", "qubit flux sweep");
    CLI::App* sub_cross = app.add_subcommand("crossing", "two-qubit avoided crossings");
    CLI::App* sub_flux = app.add_subcommand("fluxcal", "crosstalk calibration demo");
    CLI::App* sub_val = app.add_subcommand("validate", "lattice diagnostics");
    for (auto* sub : {sub_bands, sub_dos, sub_finite, sub_bound, sub_cross, sub_flux, sub_val})
        add_common(sub);

    std::vector<const char*> argv;
    argv.push_back(kToolName);
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        std::string config_text;
        if (config_path.empty() == preset_name.empty())
            fail(Errc::ConfigError, "exactly one of --config or --preset is required");
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) fail(Errc::ConfigError, "config file not found: " + config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            config_text = ss.str();
        } else {
            config_text = presets::preset_config(preset_name);
        }
        const RunConfig cfg = parse_config(config_text);
        CommandOptions opt;
        opt.out_dir = out_dir;
        opt.formats = formats;
        if (seed_set) opt.seed = seed;

        if (sub_bands->parsed()) return cmd_bands(cfg, opt, out, true, true);
        if (sub_dos->parsed()) return cmd_bands(cfg, opt, out, false, true);
        if (sub_finite->parsed()) return cmd_finite(cfg, opt, out);
        if (sub_bound->parsed()) return cmd_boundstates(cfg, opt, out);
        if (sub_cross->parsed()) return cmd_crossing(cfg, opt, out);
        if (sub_flux->parsed()) return cmd_fluxcal(cfg, opt, out);
        if (sub_val->parsed()) return cmd_validate(cfg, out);
        fail(Errc::ConfigError, "no subcommand selected");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cpwlat::cli
