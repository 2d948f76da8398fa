#pragma once

// File formats for phase data.
//
//   csv         one value per line, decimal radians (1 x N data)
//   mat-text    one image row per line, values separated by blanks
//   f64-binary  16-byte header: "S1PH", u32 rows, u32 cols (little endian),
//               4 zero bytes; then rows * cols little-endian doubles, row-major
//   png-hue     8-bit RGB, hue (value + pi) / 2pi, saturation = value = 1;
//               write only
//
// Writes go to a temporary file in the target directory that is renamed
// over the destination once complete.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "circtv/phase_data.hpp"

namespace circtv {

enum class FileFormat { csv, mat_text, f64_binary, png_hue };

/// Malformed input; the message names the line (text formats) or byte offset.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failure (missing file, unwritable directory, short write).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "csv", "mat-text", "f64-binary", "png-hue"; nullopt otherwise.
std::optional<FileFormat> parse_format_name(std::string_view name);
std::string_view format_name(FileFormat f);

/// .csv, .txt/.mat/.dat, .bin/.f64, .png; nullopt for anything else.
std::optional<FileFormat> format_from_extension(const std::filesystem::path& path);

struct PhaseFile {
  PhaseImage data;
  /// Number of finite values outside [-pi, pi) that were wrapped on read.
  std::size_t wrapped_on_read = 0;
};

/// csv yields a 1 x N image. Throws IoError, ParseError, or
/// std::invalid_argument for png-hue.
PhaseFile read_phase_file(const std::filesystem::path& path, FileFormat format);

/// csv requires a single row or a single column. Throws IoError or
/// std::invalid_argument.
void write_phase_file(const std::filesystem::path& path, const PhaseImage& data,
                      FileFormat format);

/// Writes a real grid (e.g. an unwrapped surface) as mat-text.
void write_real_grid(const std::filesystem::path& path, const RealGrid& grid);

struct Rgb {
  unsigned char r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// HSV to 8-bit RGB for the hue (value + pi) / 2pi.
Rgb phase_to_rgb(double value);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

}  // namespace circtv
