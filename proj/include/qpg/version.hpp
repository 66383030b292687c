#pragma once

namespace qpg {

inline constexpr const char* version = "1.0.0";

} // namespace qpg
