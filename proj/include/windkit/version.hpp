#pragma once

namespace windkit {

inline constexpr const char* kToolName = "windkit";
inline constexpr const char* kVersion = "0.1.0";

} // namespace windkit
