#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tgreg/problems.hpp"
#include "tgreg/solvers.hpp"

namespace tgreg {

// Portable graymap, "P2" (ASCII) or "P5" (binary, 16-bit big-endian when
// maxval > 255). Pixels are scaled to value / maxval. Throws ParseError with
// the byte offset of the first malformed or missing datum.
ImageGrid parse_pgm(std::string_view bytes);
ImageGrid read_pgm(const std::filesystem::path& path);

// Clamps to [0, 1], quantizes round-half-up to maxval and serializes as P5.
std::string format_pgm(const ImageGrid& grid, int maxval = 255);
void write_pgm(const ImageGrid& grid, const std::filesystem::path& path, int maxval = 255);

// Columns m,rel_residual_pct,rel_error_pct,sparsity,objective with 6
// significant digits. When the report holds snapshots they follow under a
// "# snapshots" line with columns gamma,m,rel_residual_pct,rel_error_pct,sparsity.
std::string format_history_csv(const RunReport& report);
void write_history_csv(const RunReport& report, const std::filesystem::path& path);

// %.6g; the CSV number format.
std::string format_number(double v);

// Writes `text` verbatim (LF line endings preserved); throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace tgreg
