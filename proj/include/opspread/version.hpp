#pragma once

namespace opspread {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace opspread
