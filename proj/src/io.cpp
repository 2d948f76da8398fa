#include "circtv/io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <unistd.h>

#include "circtv/angle.hpp"

namespace circtv {

namespace fs = std::filesystem;

namespace {

constexpr std::array<char, 4> kMagic{'S', '1', 'P', 'H'};
constexpr std::size_t kHeaderBytes = 16;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return os.str();
}

// Temporary sibling of `path`, renamed over it by commit().
class AtomicFile {
 public:
  explicit AtomicFile(const fs::path& path)
      : target_(path),
        temp_(path.string() + ".tmp." + std::to_string(::getpid())) {}

  ~AtomicFile() {
    if (!committed_) {
      std::error_code ec;
      fs::remove(temp_, ec);
    }
  }

  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  const fs::path& temp_path() const { return temp_; }

  void write_bytes(std::string_view bytes) {
    std::ofstream out(temp_, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + temp_.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw IoError("write failed: " + temp_.string());
  }

  void commit() {
    std::error_code ec;
    fs::rename(temp_, target_, ec);
    if (ec) throw IoError("cannot rename " + temp_.string() + " to " + target_.string() + ": " +
                          ec.message());
    committed_ = true;
  }

 private:
  fs::path target_;
  fs::path temp_;
  bool committed_ = false;
};

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_value(std::string_view token, const fs::path& path, std::size_t line) {
  std::string_view t = token;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": not a number: '" +
                     std::string(token) + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": non-finite value");
  }
  return v;
}

std::size_t count_out_of_range(const std::vector<double>& v) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [](double x) { return x < -kPi || x >= kPi; }));
}

PhaseFile from_values(std::size_t rows, std::size_t cols, std::vector<double> values) {
  PhaseFile out;
  out.wrapped_on_read = count_out_of_range(values);
  out.data = PhaseImage(rows, cols, std::move(values));
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

PhaseFile read_csv(const fs::path& path) {
  const std::string text = read_all(path);
  std::vector<double> values;
  const auto lines = split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::string_view line = trim(lines[k]);
    if (line.empty()) continue;
    values.push_back(parse_value(line, path, k + 1));
  }
  if (values.empty()) throw ParseError(path.string() + ": no values");
  const std::size_t n = values.size();
  return from_values(1, n, std::move(values));
}

PhaseFile read_mat_text(const fs::path& path) {
  const std::string text = read_all(path);
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  const auto lines = split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::string_view line = trim(lines[k]);
    if (line.empty()) continue;
    std::size_t count = 0;
    while (!line.empty()) {
      const std::size_t end = line.find_first_of(" \t");
      const std::string_view token = line.substr(0, end);
      values.push_back(parse_value(token, path, k + 1));
      ++count;
      line = end == std::string_view::npos ? std::string_view{} : trim(line.substr(end));
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError(path.string() + ":" + std::to_string(k + 1) + ": expected " +
                       std::to_string(cols) + " values, found " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw ParseError(path.string() + ": no values");
  return from_values(rows, cols, std::move(values));
}

std::uint32_t load_u32(const char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
  return v;
}

void store_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

PhaseFile read_binary(const fs::path& path) {
  const std::string bytes = read_all(path);
  if (bytes.size() < kHeaderBytes) {
    throw ParseError(path.string() + ": offset 0: truncated header");
  }
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw ParseError(path.string() + ": offset 0: bad magic");
  }
  const std::uint32_t rows = load_u32(bytes.data() + 4);
  const std::uint32_t cols = load_u32(bytes.data() + 8);
  const std::uint64_t count = static_cast<std::uint64_t>(rows) * cols;
  if (rows == 0 || cols == 0) throw ParseError(path.string() + ": offset 4: empty dimensions");
  if (bytes.size() != kHeaderBytes + 8 * count) {
    throw ParseError(path.string() + ": offset " + std::to_string(kHeaderBytes) + ": expected " +
                     std::to_string(8 * count) + " payload bytes, found " +
                     std::to_string(bytes.size() - kHeaderBytes));
  }
  std::vector<double> values(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::uint64_t bits = 0;
    const char* p = bytes.data() + kHeaderBytes + 8 * k;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | static_cast<unsigned char>(p[i]);
    values[k] = std::bit_cast<double>(bits);
    if (!std::isfinite(values[k])) {
      throw ParseError(path.string() + ": offset " + std::to_string(kHeaderBytes + 8 * k) +
                       ": non-finite value");
    }
  }
  return from_values(rows, cols, std::move(values));
}

void write_text(const fs::path& path, const std::string& text) {
  AtomicFile file(path);
  file.write_bytes(text);
  file.commit();
}

std::string csv_text(const PhaseImage& data) {
  if (data.rows() != 1 && data.cols() != 1) {
    throw std::invalid_argument("csv output needs a single row or column");
  }
  std::string out;
  for (double v : data.pixels()) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

std::string matrix_text(std::size_t rows, std::size_t cols, std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j > 0) out += ' ';
      out += format_double(values[i * cols + j]);
    }
    out += '\n';
  }
  return out;
}

std::string binary_bytes(const PhaseImage& data) {
  if (data.rows() > UINT32_MAX || data.cols() > UINT32_MAX) {
    throw std::invalid_argument("f64-binary dimensions exceed 32 bits");
  }
  std::string out(kMagic.begin(), kMagic.end());
  store_u32(out, static_cast<std::uint32_t>(data.rows()));
  store_u32(out, static_cast<std::uint32_t>(data.cols()));
  out.append(4, '\0');
  out.reserve(kHeaderBytes + 8 * data.size());
  for (double v : data.pixels()) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xffu));
  }
  return out;
}

void write_png(const fs::path& path, const PhaseImage& data) {
  std::vector<unsigned char> rgb(3 * data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    const Rgb c = phase_to_rgb(data.pixels()[k]);
    rgb[3 * k] = c.r;
    rgb[3 * k + 1] = c.g;
    rgb[3 * k + 2] = c.b;
  }
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(data.cols());
  image.height = static_cast<png_uint_32>(data.rows());
  image.format = PNG_FORMAT_RGB;

  AtomicFile file(path);
  std::FILE* fp = std::fopen(file.temp_path().c_str(), "wb");
  if (fp == nullptr) throw IoError("cannot create " + file.temp_path().string());
  const int ok = png_image_write_to_stdio(&image, fp, 0, rgb.data(), 0, nullptr);
  const bool closed = std::fclose(fp) == 0;
  if (!ok || !closed) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("png write failed for " + path.string() + ": " + msg);
  }
  file.commit();
}

}  // namespace

std::optional<FileFormat> parse_format_name(std::string_view name) {
  if (name == "csv") return FileFormat::csv;
  if (name == "mat-text") return FileFormat::mat_text;
  if (name == "f64-binary") return FileFormat::f64_binary;
  if (name == "png-hue") return FileFormat::png_hue;
  return std::nullopt;
}

std::string_view format_name(FileFormat f) {
  switch (f) {
    case FileFormat::csv:
      return "csv";
    case FileFormat::mat_text:
      return "mat-text";
    case FileFormat::f64_binary:
      return "f64-binary";
    case FileFormat::png_hue:
      return "png-hue";
  }
  return "unknown";
}

std::optional<FileFormat> format_from_extension(const fs::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".csv") return FileFormat::csv;
  if (ext == ".txt" || ext == ".mat" || ext == ".dat") return FileFormat::mat_text;
  if (ext == ".bin" || ext == ".f64") return FileFormat::f64_binary;
  if (ext == ".png") return FileFormat::png_hue;
  return std::nullopt;
}

PhaseFile read_phase_file(const fs::path& path, FileFormat format) {
  switch (format) {
    case FileFormat::csv:
      return read_csv(path);
    case FileFormat::mat_text:
      return read_mat_text(path);
    case FileFormat::f64_binary:
      return read_binary(path);
    case FileFormat::png_hue:
      break;
  }
  throw std::invalid_argument("png-hue is an export-only format");
}

void write_phase_file(const fs::path& path, const PhaseImage& data, FileFormat format) {
  if (data.empty()) throw std::invalid_argument("refusing to write empty data");
  switch (format) {
    case FileFormat::csv:
      write_text(path, csv_text(data));
      return;
    case FileFormat::mat_text:
      write_text(path, matrix_text(data.rows(), data.cols(), data.pixels()));
      return;
    case FileFormat::f64_binary: {
      AtomicFile file(path);
      file.write_bytes(binary_bytes(data));
      file.commit();
      return;
    }
    case FileFormat::png_hue:
      write_png(path, data);
      return;
  }
}

void write_real_grid(const fs::path& path, const RealGrid& grid) {
  write_text(path, matrix_text(grid.rows, grid.cols, grid.values));
}

Rgb phase_to_rgb(double value) {
  double h = (wrap_unchecked(value) + kPi) / kTwoPi;
  if (h >= 1.0) h = 0.0;
  const double h6 = 6.0 * h;
  const int sector = std::min(5, static_cast<int>(h6));
  const double f = h6 - sector;
  double r = 0.0, g = 0.0, b = 0.0;
  switch (sector) {
    case 0: r = 1; g = f; b = 0; break;
    case 1: r = 1 - f; g = 1; b = 0; break;
    case 2: r = 0; g = 1; b = f; break;
    case 3: r = 0; g = 1 - f; b = 1; break;
    case 4: r = f; g = 0; b = 1; break;
    default: r = 1; g = 0; b = 1 - f; break;
  }
  auto byte = [](double c) { return static_cast<unsigned char>(std::lround(255.0 * c)); };
  return {byte(r), byte(g), byte(b)};
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace circtv
