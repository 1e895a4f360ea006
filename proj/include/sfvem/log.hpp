#pragma once

#include <functional>
#include <string>

namespace sfvem {

using WarningHandler = std::function<void(const std::string&)>;

// Library code reports recoverable numerical trouble (pseudo-inverse
// fallbacks, under-integrated terms) through this hook. The default handler
// writes to std::clog.
void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace sfvem
