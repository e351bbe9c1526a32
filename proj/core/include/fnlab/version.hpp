#pragma once

namespace fnlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fnlab
