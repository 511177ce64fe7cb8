#pragma once

namespace concord {

inline constexpr const char* kVersion = "0.1.0";

}
