#pragma once

namespace snewton {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace snewton
