#pragma once

namespace spar {
inline constexpr const char* version = "0.1.0";
}
