#pragma once

#include <cstdio>
#include <string>

namespace hsvm {

/// 17 significant digits: enough to round-trip any double.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace hsvm
