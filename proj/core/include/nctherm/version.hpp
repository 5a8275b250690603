#pragma once

namespace nctherm {
inline constexpr const char* kVersion = "0.1.0";
}
