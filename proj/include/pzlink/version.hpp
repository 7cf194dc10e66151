#pragma once

namespace pzlink {

inline constexpr const char* kToolName = "pzlink";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace pzlink
