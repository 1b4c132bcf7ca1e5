#pragma once

namespace quup {

inline constexpr const char* kVersion = "0.1.0";

}
