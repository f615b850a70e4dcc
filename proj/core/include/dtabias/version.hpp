#pragma once

namespace dtabias {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dtabias
