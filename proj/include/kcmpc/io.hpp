#pragma once

#include <string>

#include "kcmpc/geometry.hpp"

namespace kcmpc {

/// Parses the point text format: one point per line, coordinates separated
/// by commas and/or whitespace; blank lines skipped. Ragged rows and
/// non-finite values are rejected with the offending line number.
Dataset parse_points_text(const std::string& text, const std::string& source_name);

Dataset ingest_points(const std::string& path);

} // namespace kcmpc
