#pragma once

namespace pulab {

inline constexpr char const* kVersion = "0.1.0";

}  // namespace pulab
