#pragma once

namespace promo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace promo
