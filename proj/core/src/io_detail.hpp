#pragma once

#include <cstdio>
#include <string>

namespace cauchydos::detail {

/// `%.12g`, the numeric format of every text artifact.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace cauchydos::detail
