#pragma once

namespace spdp {

inline constexpr const char* kVersion = "0.1.0";

} // namespace spdp
