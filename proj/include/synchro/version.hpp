#pragma once

namespace synchro {
inline constexpr const char* kVersion = "0.1.0";
}
