#pragma once

namespace hme {
inline constexpr const char* kVersion = "0.1.0";
}
