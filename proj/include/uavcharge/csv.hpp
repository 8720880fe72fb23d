#pragma once

#include <cstdio>
#include <string>

namespace uavcharge {

/// Ten significant digits, used for every CSV number.
inline std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace uavcharge
