#pragma once

namespace qskyrm {

inline constexpr const char* kToolName = "qskyrm";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qskyrm
