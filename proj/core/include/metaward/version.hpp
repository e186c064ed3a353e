#pragma once

namespace metaward {

inline constexpr const char* kVersion = "0.1.0";

} // namespace metaward
