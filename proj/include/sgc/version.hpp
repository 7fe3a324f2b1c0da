#pragma once

namespace sgc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sgc
