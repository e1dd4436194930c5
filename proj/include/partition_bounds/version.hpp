#pragma once

namespace partition_bounds {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace partition_bounds
