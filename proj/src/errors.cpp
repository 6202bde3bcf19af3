#include "cpwlat/errors.hpp"

namespace cpwlat {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::DegreeTooHigh: return "DegreeTooHigh";
        case Errc::EmptyGraph: return "EmptyGraph";
        case Errc::InvalidCell: return "InvalidCell";
        case Errc::InvalidLattice: return "InvalidLattice";
        case Errc::InvalidModeFamily: return "InvalidModeFamily";
        case Errc::NonPositiveInput: return "NonPositiveInput";
        case Errc::ZeroHopping: return "ZeroHopping";
        case Errc::NonHermitian: return "NonHermitian";
        case Errc::Underdetermined: return "Underdetermined";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::TransmonApproxInvalid: return "TransmonApproxInvalid";
        case Errc::FrequencyOutOfRange: return "FrequencyOutOfRange";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::ZeroDetuning: return "ZeroDetuning";
        case Errc::ResonantMode: return "ResonantMode";
        case Errc::SingularMatrix: return "SingularMatrix";
        case Errc::DegenerateSlope: return "DegenerateSlope";
        case Errc::IncompleteMeasurements: return "IncompleteMeasurements";
        case Errc::ConfigError: return "ConfigError";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace cpwlat
