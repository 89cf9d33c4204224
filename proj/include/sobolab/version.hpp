#pragma once

namespace sobolab {
inline constexpr const char* kVersion = "0.1.0";
}
