#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cpwlat/circuitqed.hpp"

namespace cpwlat::fluxcal {

/// Linear bias model: phi = M V + phi_offsets, with M in flux quanta per
/// volt and offsets in flux quanta.
struct CrosstalkModel {
    Eigen::MatrixXd M;
    Eigen::VectorXd phi_offsets;

    int n() const { return static_cast<int>(phi_offsets.size()); }
    void check() const;
    double condition_number() const;
};

Eigen::VectorXd flux_from_voltage(const CrosstalkModel& model, const Eigen::VectorXd& v);

/// V = M^{ -1 } (phi_target - phi_offsets). Throws SingularMatrix when M is
/// rank-deficient, reporting the condition number.
Eigen::VectorXd voltages_for_flux(const CrosstalkModel& model,
                                  const Eigen::VectorXd& phi_target);

struct MeasurementProtocol {
    double parking_flux = 0.25;  // slope extraction point, flux quanta
    double voltage_span = 1e-4;  // centered-difference half span, volts
    double linearity_tol = 1e-3; // max |curvature/slope| before shrinking the span
    double noise_sigma = 0.0;    // additive Gaussian noise scale
    std::uint64_t seed = 0;
};

/// What the calibration procedure gets to see: per-line crossing periods and
/// integer-flux center voltages, plus the full matrix of frequency-vs-voltage
/// slopes taken at the parking points.
struct MeasurementSet {
    std::vector<circuitqed::TransmonSpec> transmons;
    Eigen::VectorXd crossing_period; // volts per flux quantum on each line
    Eigen::VectorXd center_voltage;  // voltage at which phi_i is an integer
    Eigen::MatrixXd slope;           // d f_i / d V_j at the parking point
    Eigen::VectorXd parking_flux;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

MeasurementSet simulate_measurements(const CrosstalkModel& true_model,
                                     const std::vector<circuitqed::TransmonSpec>& transmons,
                                     const MeasurementProtocol& protocol);

struct CalibrationResult {
    CrosstalkModel model;
    /// |slope-based M_ii - period-based M_ii| per line; the two estimates are
    /// redundant on the diagonal and agree at zero noise.
    Eigen::VectorXd diagonal_residual;
};

CalibrationResult calibrate(const MeasurementSet& measurements);

nlohmann::json model_to_json(const CrosstalkModel& model);
CrosstalkModel model_from_json(const nlohmann::json& j);

} // namespace cpwlat::fluxcal
