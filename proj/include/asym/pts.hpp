// Landmark .pts text files: optional "version: 1" line, "n_points: N",
// then N "x y" lines inside braces.

#pragma once

#include <string>

#include "asym/geometry.hpp"

namespace asym {

Landmarks parse_pts(const std::string& text);
std::string format_pts(const Landmarks& lm);

Landmarks read_pts_file(const std::string& path);
void write_pts_file(const std::string& path, const Landmarks& lm);

} // namespace asym
