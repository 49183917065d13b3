#pragma once

namespace fstirap {

inline constexpr const char* kToolName = "fstirap";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace fstirap
