#pragma once

namespace hardykit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hardykit
