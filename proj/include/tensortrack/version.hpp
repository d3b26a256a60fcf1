#pragma once

namespace tensortrack {

inline constexpr const char* kToolName = "tensortrack";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace tensortrack
