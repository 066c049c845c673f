#pragma once

namespace soflab {

inline constexpr const char* kToolVersion = "0.1.0";

}
