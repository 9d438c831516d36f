#pragma once

namespace macrospin {

inline constexpr const char* kVersion = "1.0.0";

} // namespace macrospin
