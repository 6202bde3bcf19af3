#include "cpwlat/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cpwlat/version.hpp"

namespace cpwlat::spectra {

void PortCoupling::check() const {
    if (base_rate_in < 0.0 || base_rate_out < 0.0 || kappa0 < 0.0)
        fail(Errc::NonPositiveInput, "port rates must be >= 0");
}

TransmissionTrace synth_transmission(const Eigen::VectorXd& eigenfreqs,
                                     const Eigen::MatrixXd& eigenvectors,
                                     const PortCoupling& ports,
                                     const std::vector<double>& freq_grid) {
    ports.check();
    if (eigenvectors.cols() != eigenfreqs.size())
        fail(Errc::DimensionMismatch, "one eigenvector column required per mode");
    if (ports.input_site < 0 || ports.input_site >= eigenvectors.rows() ||
        ports.output_site < 0 || ports.output_site >= eigenvectors.rows())
        fail(Errc::DimensionMismatch, "port site outside the lattice");

    const int nm = static_cast<int>(eigenfreqs.size());
    std::vector<double> coupling(nm), kappa(nm);
    for (int k = 0; k < nm; ++k) {
        const double pin = eigenvectors(ports.input_site, k);
        const double pout = eigenvectors(ports.output_site, k);
        const double rin = ports.base_rate_in * pin * pin;
        const double rout = ports.base_rate_out * pout * pout;
        kappa[k] = ports.kappa0 + rin + rout;
        const double sign = (pin * pout >= 0.0) ? 1.0 : -1.0;
        coupling[k] = sign * std::sqrt(rin * rout);
    }

    TransmissionTrace trace;
    trace.freq = freq_grid;
    trace.amplitude.resize(freq_grid.size());
    for (size_t i = 0; i < freq_grid.size(); ++i) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < nm; ++k)
            acc += coupling[k] /
                   std::complex<double>(0.5 * kappa[k], freq_grid[i] - eigenfreqs(k));
        trace.amplitude[i] = acc;
    }
    return trace;
}

FluxMap flux_map(const std::vector<double>& flux,
                 const std::vector<Eigen::VectorXd>& eigenfreqs_per_flux,
                 const std::vector<Eigen::MatrixXd>& eigenvectors_per_flux,
                 const PortCoupling& ports, const std::vector<double>& freq_grid) {
    if (flux.size() != eigenfreqs_per_flux.size() ||
        flux.size() != eigenvectors_per_flux.size())
        fail(Errc::DimensionMismatch, "one eigensystem required per flux point");
    FluxMap map;
    map.flux = flux;
    map.freq = freq_grid;
    map.rows.reserve(flux.size());
    for (size_t i = 0; i < flux.size(); ++i)
        map.rows.push_back(synth_transmission(eigenfreqs_per_flux[i],
                                              eigenvectors_per_flux[i], ports, freq_grid));
    return map;
}

// ---- formatting -----------------------------------------------------------

std::string format_double(double v, int precision) {
    if (v == 0.0) v = 0.0; // normalize negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot open " + path.string() + " for writing");
    out << contents;
    if (!out) fail(Errc::IoError, "write failed for " + path.string());
}

void write_sidecar(const std::filesystem::path& artifact_path, std::string_view input_text) {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(input_text)));
    j["input_fnv1a64"] = hash;
    j["artifact"] = artifact_path.filename().string();
    std::filesystem::path side = artifact_path;
    side += ".provenance.json";
    write_text_file(side, j.dump(2) + "\n");
}

// ---- CSV ------------------------------------------------------------------

std::string bands_csv(const tightbinding::BandResult& bands) {
    std::string out = "k,band_index,freq_uncorrected_GHz,freq_corrected_GHz\n";
    for (size_t ik = 0; ik < bands.k_grid.size(); ++ik)
        for (int b = 0; b < bands.bands_per_cell; ++b) {
            out += format_double(bands.k_grid[ik]);
            out += ',';
            out += std::to_string(b);
            out += ',';
            out += format_double(bands.uncorrected(static_cast<int>(ik), b));
            out += ',';
            out += format_double(bands.corrected(static_cast<int>(ik), b));
            out += '\n';
        }
    return out;
}

std::string dos_csv(const tightbinding::DosHistogram& dos) {
    std::string out = "bin_center_GHz,dos\n";
    for (size_t i = 0; i < dos.density.size(); ++i) {
        out += format_double(0.5 * (dos.bin_edges[i] + dos.bin_edges[i + 1]));
        out += ',';
        out += format_double(dos.density[i]);
        out += '\n';
    }
    return out;
}

std::string finite_csv(const tightbinding::EigenSystem& sys) {
    std::string out = "index,freq_GHz\n";
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(sys.values(i));
        out += '\n';
    }
    return out;
}

std::string trace_csv(const TransmissionTrace& trace) {
    std::string out = "freq_GHz,re,im,mag\n";
    for (size_t i = 0; i < trace.freq.size(); ++i) {
        out += format_double(trace.freq[i]);
        out += ',';
        out += format_double(trace.amplitude[i].real());
        out += ',';
        out += format_double(trace.amplitude[i].imag());
        out += ',';
        out += format_double(std::abs(trace.amplitude[i]));
        out += '\n';
    }
    return out;
}

std::string map_csv(const FluxMap& map) {
    std::string out = "flux,freq_GHz,mag\n";
    for (size_t r = 0; r < map.rows.size(); ++r)
        for (size_t i = 0; i < map.freq.size(); ++i) {
            out += format_double(map.flux[r]);
            out += ',';
            out += format_double(map.freq[i]);
            out += ',';
            out += format_double(std::abs(map.rows[r].amplitude[i]));
            out += '\n';
        }
    return out;
}

std::string boundstates_csv(const circuitqed::BoundStateScan& scan) {
    std::string out = "flux,eigenfreq_GHz";
    for (int q = 0; q < scan.n_qubits; ++q) out += ",qubit_weight_" + std::to_string(q);
    out += '\n';
    for (size_t i = 0; i < scan.flux.size(); ++i) {
        const auto& res = scan.results[i];
        for (Eigen::Index s = 0; s < res.eigenfrequencies.size(); ++s) {
            out += format_double(scan.flux[i]);
            out += ',';
            out += format_double(res.eigenfrequencies(s));
            for (int q = 0; q < scan.n_qubits; ++q) {
                out += ',';
                out += format_double(res.qubit_weight(s, q));
            }
            out += '\n';
        }
    }
    return out;
}

std::string crossing_csv(const circuitqed::CrossingScan& scan) {
    std::string out = "flux_offset,branch_index,freq_GHz,gap_GHz\n";
    for (size_t i = 0; i < scan.flux1.size(); ++i) {
        const double gap = scan.branch_freq(static_cast<int>(i), 1) -
                           scan.branch_freq(static_cast<int>(i), 0);
        for (int b = 0; b < 2; ++b) {
            out += format_double(scan.flux1[i]);
            out += ',';
            out += std::to_string(b);
            out += ',';
            out += format_double(scan.branch_freq(static_cast<int>(i), b));
            out += ',';
            out += format_double(gap);
            out += '\n';
        }
    }
    return out;
}

// ---- JSON -----------------------------------------------------------------

nlohmann::json bands_json(const tightbinding::BandResult& bands) {
    nlohmann::json j;
    j["k"] = bands.k_grid;
    j["omega_mu_GHz"] = bands.omega_mu;
    j["t0_GHz"] = bands.t0;
    auto matrix = [](const Eigen::MatrixXd& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < m.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
            rows.push_back(row);
        }
        return rows;
    };
    j["freq_uncorrected_GHz"] = matrix(bands.uncorrected);
    j["freq_corrected_GHz"] = matrix(bands.corrected);
    return j;
}

nlohmann::json dos_json(const tightbinding::DosHistogram& dos) {
    nlohmann::json j;
    j["bin_edges_GHz"] = dos.bin_edges;
    j["dos"] = dos.density;
    j["states_per_cell"] = dos.bands_per_cell;
    return j;
}

nlohmann::json trace_json(const TransmissionTrace& trace) {
    nlohmann::json j;
    j["freq_GHz"] = trace.freq;
    std::vector<double> re(trace.amplitude.size()), im(trace.amplitude.size());
    for (size_t i = 0; i < trace.amplitude.size(); ++i) {
        re[i] = trace.amplitude[i].real();
        im[i] = trace.amplitude[i].imag();
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

nlohmann::json boundstates_json(const circuitqed::BoundStateScan& scan) {
    nlohmann::json j;
    j["flux"] = scan.flux;
    j["n_qubits"] = scan.n_qubits;
    nlohmann::json points = nlohmann::json::array();
    for (size_t i = 0; i < scan.flux.size(); ++i) {
        const auto& res = scan.results[i];
        for (Eigen::Index s = 0; s < res.eigenfrequencies.size(); ++s) {
            nlohmann::json p;
            p["flux"] = scan.flux[i];
            p["freq_GHz"] = res.eigenfrequencies(s);
            std::vector<double> w(scan.n_qubits);
            for (int q = 0; q < scan.n_qubits; ++q) w[q] = res.qubit_weight(s, q);
            p["qubit_weight"] = w;
            points.push_back(p);
        }
    }
    j["states"] = points;
    return j;
}

// ---- SVG ------------------------------------------------------------------

namespace {

constexpr int kW = 880, kH = 560;
constexpr int kLeft = 80, kRight = 30, kTop = 30, kBottom = 60;

struct Axes {
    double x0, x1, y0, y1;

    double px(double x) const {
        return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight);
    }
    double py(double y) const {
        return kH - kBottom - (y - y0) / (y1 - y0) * (kH - kTop - kBottom);
    }
};

void pad_range(double& lo, double& hi) {
    if (hi <= lo) {
        lo -= 0.5;
        hi += 0.5;
    } else {
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
}

std::string svg_header() {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
      << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    return s.str();
}

std::string svg_axes(const Axes& ax, const std::string& xlabel, const std::string& ylabel) {
    std::ostringstream s;
    s << "<g stroke=\"black\" fill=\"none\" stroke-width=\"1\">\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kW - kLeft - kRight
      << "\" height=\"" << kH - kTop - kBottom << "\"/>\n</g>\n";
    s << "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"black\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = ax.x0 + (ax.x1 - ax.x0) * i / 5.0;
        const double y = ax.y0 + (ax.y1 - ax.y0) * i / 5.0;
        s << "<text x=\"" << format_double(ax.px(x), 1) << "\" y=\"" << kH - kBottom + 18
          << "\" text-anchor=\"middle\">" << format_double(x, 4) << "</text>\n";
        s << "<text x=\"" << kLeft - 8 << "\" y=\"" << format_double(ax.py(y) + 4, 1)
          << "\" text-anchor=\"end\">" << format_double(y, 4) << "</text>\n";
    }
    s << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 14
      << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    s << "<text x=\"18\" y=\"" << (kTop + kH - kBottom) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (kTop + kH - kBottom) / 2 << ")\">" << ylabel << "</text>\n</g>\n";
    return s.str();
}

std::string polyline(const Axes& ax, const std::vector<double>& xs,
                     const std::vector<double>& ys, const char* color) {
    std::ostringstream s;
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) s << ' ';
        s << format_double(ax.px(xs[i]), 2) << ',' << format_double(ax.py(ys[i]), 2);
    }
    s << "\"/>\n";
    return s.str();
}

const char* kLineColors[] = {"#1f4e9c", "#c23b22", "#2a8a5c", "#8456b8",
                             "#b8860b", "#2196a8", "#7a4a2b", "#5d6d7e"};

/// 256-step colormap, dark blue through teal to yellow.
std::string heat_color(double v) {
    v = std::clamp(v, 0.0, 1.0);
    const int step = std::min(255, static_cast<int>(v * 256.0));
    const double t = step / 255.0;
    auto lerp = [](double a, double b, double u) { return a + (b - a) * u; };
    double r, g, b;
    if (t < 0.5) {
        const double u = t / 0.5;
        r = lerp(13, 32, u);
        g = lerp(8, 140, u);
        b = lerp(80, 140, u);
    } else {
        const double u = (t - 0.5) / 0.5;
        r = lerp(32, 250, u);
        g = lerp(140, 220, u);
        b = lerp(140, 60, u);
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(r), static_cast<int>(g),
                  static_cast<int>(b));
    return buf;
}

} // namespace

std::string bands_svg(const tightbinding::BandResult& bands) {
    Axes ax;
    ax.x0 = bands.k_grid.front();
    ax.x1 = bands.k_grid.back();
    ax.y0 = bands.corrected.minCoeff();
    ax.y1 = bands.corrected.maxCoeff();
    pad_range(ax.y0, ax.y1);
    std::string s = svg_header();
    for (int b = 0; b < bands.bands_per_cell; ++b) {
        std::vector<double> ys(bands.k_grid.size());
        for (size_t ik = 0; ik < bands.k_grid.size(); ++ik)
            ys[ik] = bands.corrected(static_cast<int>(ik), b);
        s += polyline(ax, bands.k_grid, ys, kLineColors[b % 8]);
    }
    s += svg_axes(ax, "k (per cell)", "frequency (GHz)");
    s += "</svg>\n";
    return s;
}

std::string dos_svg(const tightbinding::DosHistogram& dos) {
    Axes ax;
    ax.x0 = dos.bin_edges.front();
    ax.x1 = dos.bin_edges.back();
    ax.y0 = 0.0;
    ax.y1 = *std::max_element(dos.density.begin(), dos.density.end());
    pad_range(ax.y0, ax.y1);
    ax.y0 = 0.0;
    std::string s = svg_header();
    for (size_t i = 0; i < dos.density.size(); ++i) {
        if (dos.density[i] <= 0.0) continue;
        const double x = ax.px(dos.bin_edges[i]);
        const double w = ax.px(dos.bin_edges[i + 1]) - x;
        const double y = ax.py(dos.density[i]);
        s += "<rect x=\"" + format_double(x, 2) + "\" y=\"" + format_double(y, 2) +
             "\" width=\"" + format_double(w, 2) + "\" height=\"" +
             format_double(ax.py(0.0) - y, 2) + "\" fill=\"#1f4e9c\"/>\n";
    }
    s += svg_axes(ax, "frequency (GHz)", "states / cell / GHz");
    s += "</svg>\n";
    return s;
}

std::string trace_svg(const TransmissionTrace& trace) {
    std::vector<double> mag(trace.freq.size());
    for (size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(trace.amplitude[i]);
    Axes ax;
    ax.x0 = trace.freq.front();
    ax.x1 = trace.freq.back();
    ax.y0 = 0.0;
    ax.y1 = *std::max_element(mag.begin(), mag.end());
    pad_range(ax.y0, ax.y1);
    ax.y0 = 0.0;
    std::string s = svg_header();
    s += polyline(ax, trace.freq, mag, kLineColors[0]);
    s += svg_axes(ax, "frequency (GHz)", "|t|");
    s += "</svg>\n";
    return s;
}

std::string map_svg(const FluxMap& map) {
    Axes ax;
    ax.x0 = map.flux.front();
    ax.x1 = map.flux.back();
    ax.y0 = map.freq.front();
    ax.y1 = map.freq.back();
    double peak = 0.0;
    for (const auto& row : map.rows)
        for (const auto& a : row.amplitude) peak = std::max(peak, std::abs(a));
    if (peak <= 0.0) peak = 1.0;

    std::string s = svg_header();
    const double cw = static_cast<double>(kW - kLeft - kRight) / map.flux.size();
    const double ch = static_cast<double>(kH - kTop - kBottom) / map.freq.size();
    for (size_t r = 0; r < map.rows.size(); ++r)
        for (size_t i = 0; i < map.freq.size(); ++i) {
            // log-ish compression so weak lattice modes stay visible
            const double v = std::abs(map.rows[r].amplitude[i]) / peak;
            const double shade = std::pow(v, 0.35);
            const double x = kLeft + r * cw;
            const double y = kH - kBottom - (i + 1) * ch;
            s += "<rect x=\"" + format_double(x, 2) + "\" y=\"" + format_double(y, 2) +
                 "\" width=\"" + format_double(cw + 0.5, 2) + "\" height=\"" +
                 format_double(ch + 0.5, 2) + "\" fill=\"" + heat_color(shade) + "\"/>\n";
        }
    s += svg_axes(ax, "flux (flux quanta)", "frequency (GHz)");
    s += "</svg>\n";
    return s;
}

std::string boundstates_svg(const circuitqed::BoundStateScan& scan) {
    Axes ax;
    ax.x0 = scan.flux.front();
    ax.x1 = scan.flux.back();
    ax.y0 = scan.results.front().eigenfrequencies.minCoeff();
    ax.y1 = scan.results.front().eigenfrequencies.maxCoeff();
    for (const auto& res : scan.results) {
        ax.y0 = std::min(ax.y0, res.eigenfrequencies.minCoeff());
        ax.y1 = std::max(ax.y1, res.eigenfrequencies.maxCoeff());
    }
    pad_range(ax.y0, ax.y1);

    std::string s = svg_header();
    for (size_t i = 0; i < scan.flux.size(); ++i) {
        const auto& res = scan.results[i];
        for (Eigen::Index st = 0; st < res.eigenfrequencies.size(); ++st) {
            const double w = res.qubit_weight.row(st).sum();
            const double x = ax.px(scan.flux[i]);
            const double y = ax.py(res.eigenfrequencies(st));
            if (w < 1e-3) {
                s += "<circle cx=\"" + format_double(x, 2) + "\" cy=\"" +
                     format_double(y, 2) + "\" r=\"0.6\" fill=\"#b0b8c0\"/>\n";
            } else {
                // marker area tracks the qubit weight
                const double radius = 1.0 + 5.0 * std::sqrt(w);
                s += "<circle cx=\"" + format_double(x, 2) + "\" cy=\"" +
                     format_double(y, 2) + "\" r=\"" + format_double(radius, 2) +
                     "\" fill=\"" + heat_color(w) + "\" fill-opacity=\"0.85\"/>\n";
            }
        }
    }
    s += svg_axes(ax, "flux (flux quanta)", "frequency (GHz)");
    s += "</svg>\n";
    return s;
}

} // namespace cpwlat::spectra
