#pragma once

namespace sfg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sfg
