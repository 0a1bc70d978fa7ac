#pragma once

namespace vxm {

inline constexpr const char* version = "0.1.0";

}
