#pragma once

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>

namespace qevap {

// Fixed 12-significant-digit cell format; identical input bits give
// identical text, which keeps CSV output byte-reproducible.
inline std::string csv_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_cell(int v) { return std::to_string(v); }
inline std::string csv_cell(const char* s) { return s; }
inline std::string csv_cell(std::string s) { return s; }

template <class... Cells>
void csv_row(std::ostream& os, const Cells&... cells) {
  const std::string parts[] = {csv_cell(cells)...};
  bool first = true;
  for (const std::string& p : parts) {
    if (!first) os << ',';
    os << p;
    first = false;
  }
  os << '\n';
}

inline void csv_header(std::ostream& os, std::initializer_list<const char*> names) {
  bool first = true;
  for (const char* n : names) {
    if (!first) os << ',';
    os << n;
    first = false;
  }
  os << '\n';
}

}  // namespace qevap
