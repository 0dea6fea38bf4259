#pragma once

#include <string_view>

namespace ciprng {

inline constexpr std::string_view tool_name = "ciprng";
inline constexpr std::string_view tool_version = "0.1.0";

} // namespace ciprng
