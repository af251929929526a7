#pragma once

#include <string>

namespace hyperball {

// Shortest text that is still a faithful binary64 round trip: %.17g.
std::string fmt_g17(double x);

// Write-to-temp-then-rename so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace hyperball
