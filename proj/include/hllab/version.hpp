#pragma once

namespace hllab {

inline constexpr const char* kVersion = "hllab 0.1.0";

}  // namespace hllab
