#pragma once

#include <string_view>

namespace unicrit {

inline constexpr std::string_view kVersion = "0.1.0";

// JSON report schema revision
inline constexpr int kReportSchema = 1;

}  // namespace unicrit
