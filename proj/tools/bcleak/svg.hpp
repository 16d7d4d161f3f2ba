#pragma once

#include <string>
#include <vector>

#include <bcleak/frontier.hpp>

namespace bcleak::cli {

// One polyline per curve on shared axes (R1 right, R2 up).
void write_svg(const std::string& path, const std::vector<FrontierCurve>& curves);

}  // namespace bcleak::cli
