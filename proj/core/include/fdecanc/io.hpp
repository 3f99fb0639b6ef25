// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace fdecanc {

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomically(const std::string& path, std::string_view content);

std::string read_file(const std::string& path);

/// Shortest-exact decimal form (17 significant digits); infinities as inf/-inf.
std::string format_double(double v);

}  // namespace fdecanc
