#pragma once

namespace anosov {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace anosov
