#pragma once

#include <string>

namespace opspread {

/// 17 significant digits, '.' decimal separator, locale-independent.
/// Round-trips every finite double exactly.
std::string format_double(double v);

std::string format_int(long long v);

}  // namespace opspread
