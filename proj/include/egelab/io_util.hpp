#pragma once

#include <cstdio>
#include <string>

namespace egelab {

/// Round-trip decimal (17 significant digits).
inline std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace egelab
