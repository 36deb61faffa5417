#pragma once

namespace polymin {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace polymin
