#pragma once

namespace purelab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace purelab
