#pragma once

#include <cstdint>

namespace eoe {

enum class Health : std::uint8_t { S, I };

}  // namespace eoe
