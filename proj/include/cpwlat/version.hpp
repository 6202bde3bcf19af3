#pragma once

namespace cpwlat {

inline constexpr const char* kToolName = "cpwlat";
inline constexpr const char* kVersion = "1.0.0";

} // namespace cpwlat
