#pragma once

namespace levichk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace levichk
