#include "cpwlat/fluxcal.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace cpwlat::fluxcal {

void CrosstalkModel::check() const {
    if (M.rows() != M.cols()) fail(Errc::DimensionMismatch, "M must be square");
    if (M.rows() != phi_offsets.size())
        fail(Errc::DimensionMismatch, "offset vector length must match M");
}

double CrosstalkModel::condition_number() const {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

Eigen::VectorXd flux_from_voltage(const CrosstalkModel& model, const Eigen::VectorXd& v) {
    model.check();
    if (v.size() != model.n()) fail(Errc::DimensionMismatch, "voltage vector length");
    return model.M * v + model.phi_offsets;
}

Eigen::VectorXd voltages_for_flux(const CrosstalkModel& model,
                                  const Eigen::VectorXd& phi_target) {
    model.check();
    if (phi_target.size() != model.n()) fail(Errc::DimensionMismatch, "flux vector length");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(model.M);
    if (!lu.isInvertible())
        fail(Errc::SingularMatrix,
             "crosstalk matrix is singular (condition number " +
                 std::to_string(model.condition_number()) + ")");
    return lu.solve(phi_target - model.phi_offsets);
}

MeasurementSet simulate_measurements(const CrosstalkModel& true_model,
                                     const std::vector<circuitqed::TransmonSpec>& transmons,
                                     const MeasurementProtocol& protocol) {
    true_model.check();
    const int n = true_model.n();
    if (static_cast<int>(transmons.size()) != n)
        fail(Errc::DimensionMismatch, "one TransmonSpec required per bias line");
    for (const auto& t : transmons) t.check();
    if (!(protocol.voltage_span > 0.0))
        fail(Errc::NonPositiveInput, "voltage span must be positive");

    std::mt19937_64 rng(protocol.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto noisy = [&](double value, double scale) {
        return protocol.noise_sigma > 0.0 ? value + protocol.noise_sigma * scale * gauss(rng)
                                          : value;
    };

    MeasurementSet set;
    set.transmons = transmons;
    set.noise_sigma = protocol.noise_sigma;
    set.seed = protocol.seed;
    set.crossing_period.resize(n);
    set.center_voltage.resize(n);
    set.slope.resize(n, n);
    set.parking_flux = Eigen::VectorXd::Constant(n, protocol.parking_flux);

    for (int i = 0; i < n; ++i) {
        const double mii = true_model.M(i, i);
        if (mii == 0.0)
            fail(Errc::SingularMatrix, "diagonal element M_ii is zero on line " +
                                           std::to_string(i));
        // sweeping V_i with the other lines grounded: phi_i = M_ii V_i + phi*_i.
        // Mode crossings repeat every flux quantum; their symmetry center sits
        // at integer flux.
        set.crossing_period(i) = noisy(1.0 / mii, std::abs(1.0 / mii));
        set.center_voltage(i) = noisy(-true_model.phi_offsets(i) / mii,
                                      std::abs(1.0 / mii));
    }

    // slope of f_i versus V_j around the parking point of qubit i, with the
    // sweep span shrunk until the response is linear to within linearity_tol
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double dphi_dvj = true_model.M(i, j);
            auto freq_at = [&](double dv) {
                return circuitqed::transmon_frequency(transmons[i],
                                                      protocol.parking_flux + dphi_dvj * dv);
            };
            double span = protocol.voltage_span;
            double slope = 0.0;
            for (int attempt = 0; attempt < 60; ++attempt) {
                const double fp = freq_at(span);
                const double fm = freq_at(-span);
                const double f0 = freq_at(0.0);
                const double diff = fp - fm;
                slope = diff / (2.0 * span);
                const double curvature = fp + fm - 2.0 * f0;
                if (diff == 0.0 || std::abs(curvature) <= protocol.linearity_tol * std::abs(diff))
                    break;
                span *= 0.5;
            }
            set.slope(i, j) = noisy(slope, std::max(std::abs(slope), 1e-3));
        }
    }
    return set;
}

CalibrationResult calibrate(const MeasurementSet& set) {
    const int n = static_cast<int>(set.transmons.size());
    if (n == 0) fail(Errc::IncompleteMeasurements, "no transmons in the measurement set");
    if (set.crossing_period.size() != n || set.center_voltage.size() != n ||
        set.parking_flux.size() != n || set.slope.rows() != n || set.slope.cols() != n)
        fail(Errc::IncompleteMeasurements,
             "need n periods, n centers and an n x n slope matrix");

    CalibrationResult result;
    result.model.M.resize(n, n);
    result.model.phi_offsets.resize(n);
    result.diagonal_residual.resize(n);

    for (int i = 0; i < n; ++i) {
        if (set.crossing_period(i) == 0.0)
            fail(Errc::IncompleteMeasurements, "zero crossing period on line " +
                                                   std::to_string(i));
        const double mii = 1.0 / set.crossing_period(i);
        result.model.M(i, i) = mii;
        // center voltage marks integer flux; fold the offset into (-1/2, 1/2]
        double offset = -mii * set.center_voltage(i);
        offset -= std::round(offset);
        result.model.phi_offsets(i) = offset;
    }

    for (int i = 0; i < n; ++i) {
        const double dfdphi =
            circuitqed::transmon_dfdflux(set.transmons[i], set.parking_flux(i));
        if (std::abs(dfdphi) < 1e-9)
            fail(Errc::DegenerateSlope,
                 "qubit " + std::to_string(i) + " parked at a flux sweet spot");
        for (int j = 0; j < n; ++j) {
            const double mij = set.slope(i, j) / dfdphi;
            if (i == j)
                result.diagonal_residual(i) = std::abs(mij - result.model.M(i, i));
            else
                result.model.M(i, j) = mij;
        }
    }
    return result;
}

nlohmann::json model_to_json(const CrosstalkModel& model) {
    model.check();
    nlohmann::json j;
    j["M"] = nlohmann::json::array();
    for (int r = 0; r < model.M.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < model.M.cols(); ++c) row.push_back(model.M(r, c));
        j["M"].push_back(row);
    }
    j["phi_offsets"] = std::vector<double>(model.phi_offsets.data(),
                                           model.phi_offsets.data() + model.phi_offsets.size());
    return j;
}

CrosstalkModel model_from_json(const nlohmann::json& j) {
    CrosstalkModel model;
    try {
        const auto rows = j.at("M").get<std::vector<std::vector<double>>>();
        const auto offsets = j.at("phi_offsets").get<std::vector<double>>();
        const int n = static_cast<int>(rows.size());
        model.M.resize(n, n);
        for (int r = 0; r < n; ++r) {
            if (static_cast<int>(rows[r].size()) != n)
                fail(Errc::DimensionMismatch, "M must be square");
            for (int c = 0; c < n; ++c) model.M(r, c) = rows[r][c];
        }
        model.phi_offsets = Eigen::Map<const Eigen::VectorXd>(offsets.data(),
                                                              static_cast<int>(offsets.size()));
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::ConfigError, std::string("malformed crosstalk model JSON: ") + e.what());
    }
    model.check();
    return model;
}

} // namespace cpwlat::fluxcal
