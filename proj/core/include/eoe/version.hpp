#pragma once

namespace eoe {
inline constexpr const char* kVersion = "0.1.0";
}
