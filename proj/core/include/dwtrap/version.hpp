#pragma once

namespace dwtrap {
inline constexpr const char* version = "0.1.0";
}
