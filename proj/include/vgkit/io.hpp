#pragma once

#include <string>
#include <vector>

namespace vgkit {

/// strict: malformed rows abort with ParseError.
/// lenient: malformed rows are skipped with a warning, duplicates last-win.
enum class ParseMode { strict, lenient };

/// Non-fatal ingestion diagnostic. `line` is 1-based, 0 when not tied to a line.
struct Warning {
  long line = 0;
  std::string message;
};

/// Canonical number formatting: up to 6 fractional digits, trailing zeros
/// trimmed, no exponent. Keeps serialized files byte-stable.
std::string format_number(double v);

}  // namespace vgkit
