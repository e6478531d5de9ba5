#include "tgreg/io_formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tgreg/errors.hpp"

namespace tgreg {
namespace {

class PgmScanner {
 public:
  explicit PgmScanner(std::string_view bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }

  // Skips whitespace and '#' comments running to end of line.
  void skip_space() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long read_uint(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    unsigned long v = 0;
    const auto* first = bytes_.data() + pos_;
    const auto* last = bytes_.data() + bytes_.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first)
      throw ParseError(std::string("PGM: expected ") + what, start);
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  std::string_view take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw ParseError("PGM: truncated pixel payload", bytes_.size());
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  void expect_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
      throw ParseError("PGM: expected whitespace after maxval", pos_);
    ++pos_;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

ImageGrid parse_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw ParseError("PGM: bad magic (expected P2 or P5)", 0);
  const bool binary = bytes[1] == '5';

  PgmScanner in(bytes.substr(0));
  in.take(2);
  const std::size_t width_at = in.pos();
  const unsigned long cols = in.read_uint("width");
  const unsigned long rows = in.read_uint("height");
  if (cols == 0 || rows == 0) throw ParseError("PGM: zero image dimension", width_at);
  const std::size_t maxval_at = in.pos();
  const unsigned long maxval = in.read_uint("maxval");
  if (maxval == 0 || maxval > 65535) throw ParseError("PGM: maxval must be in 1..65535", maxval_at);

  ImageGrid grid{rows, cols, Vector(rows * cols)};
  const auto maxv = static_cast<double>(maxval);

  if (binary) {
    in.expect_single_space();
    const std::size_t width = maxval > 255 ? 2 : 1;
    const std::size_t payload_at = in.pos();
    const auto data = in.take(grid.pixels.size() * width);
    for (std::size_t i = 0; i < grid.pixels.size(); ++i) {
      unsigned long v = static_cast<unsigned char>(data[i * width]);
      if (width == 2) v = (v << 8) | static_cast<unsigned char>(data[i * width + 1]);
      if (v > maxval) throw ParseError("PGM: sample exceeds maxval", payload_at + i * width);
      grid.pixels[i] = static_cast<double>(v) / maxv;
    }
  } else {
    for (auto& p : grid.pixels) {
      in.skip_space();
      const std::size_t at = in.pos();
      if (at >= bytes.size()) throw ParseError("PGM: truncated pixel payload", at);
      const unsigned long v = in.read_uint("sample");
      if (v > maxval) throw ParseError("PGM: sample exceeds maxval", at);
      p = static_cast<double>(v) / maxv;
    }
  }
  return grid;
}

ImageGrid read_pgm(const std::filesystem::path& path) { return parse_pgm(read_text_file(path)); }

std::string format_pgm(const ImageGrid& grid, int maxval) {
  if (maxval < 1 || maxval > 65535) throw InvalidInput("write_pgm: maxval must be in 1..65535");
  if (grid.pixels.size() != grid.rows * grid.cols || grid.pixels.empty())
    throw InvalidInput("write_pgm: pixel count does not match shape");
  if (!all_finite(grid.pixels)) throw InvalidInput("write_pgm: non-finite pixel");

  std::string out = "P5\n" + std::to_string(grid.cols) + " " + std::to_string(grid.rows) + "\n" +
                    std::to_string(maxval) + "\n";
  const bool wide = maxval > 255;
  out.reserve(out.size() + grid.pixels.size() * (wide ? 2 : 1));
  for (double p : grid.pixels) {
    const double clamped = std::clamp(p, 0.0, 1.0);
    const auto q = static_cast<unsigned>(std::floor(clamped * maxval + 0.5));
    if (wide) out.push_back(static_cast<char>((q >> 8) & 0xFF));
    out.push_back(static_cast<char>(q & 0xFF));
  }
  return out;
}

void write_pgm(const ImageGrid& grid, const std::filesystem::path& path, int maxval) {
  write_text_file(path, format_pgm(grid, maxval));
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_history_csv(const RunReport& report) {
  std::ostringstream os;
  os << "m,rel_residual_pct,rel_error_pct,sparsity,objective\n";
  for (const auto& h : report.history) {
    os << h.m << ',' << format_number(h.rel_residual_pct) << ','
       << (h.rel_error ? format_number(100.0 * *h.rel_error) : "") << ',' << h.sparsity << ','
       << format_number(h.objective) << '\n';
  }
  if (!report.snapshots.empty()) {
    os << "# snapshots\n";
    os << "gamma,m,rel_residual_pct,rel_error_pct,sparsity\n";
    for (const auto& s : report.snapshots) {
      os << format_number(s.gamma) << ',' << s.m << ',' << format_number(s.rel_residual_pct) << ','
         << (s.rel_error_pct ? format_number(*s.rel_error_pct) : "") << ',' << s.sparsity << '\n';
    }
  }
  return os.str();
}

void write_history_csv(const RunReport& report, const std::filesystem::path& path) {
  write_text_file(path, format_history_csv(report));
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace tgreg
