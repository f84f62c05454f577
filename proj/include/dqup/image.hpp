#pragma once

// Binary PPM (P6, maxval 255) images and their pure-quaternion encoding
// R/255·i + G/255·j + B/255·k. Rows of the signal are image rows (height).

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "qsignal.hpp"

namespace dqup {

struct ColorImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::array<std::uint8_t, 3>> pixels;  // row-major

  ColorImage() = default;
  ColorImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h, {0, 0, 0}) {}

  std::array<std::uint8_t, 3>& at(std::size_t row, std::size_t col) { return pixels[row * width + col]; }
  const std::array<std::uint8_t, 3>& at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }

  bool operator==(const ColorImage&) const = default;
};

inline QSignal image_to_qsignal(const ColorImage& img) {
  QSignal s(img.height, img.width);
  for (std::size_t p = 0; p < img.pixels.size(); ++p) {
    const auto& px = img.pixels[p];
    s.data()[p] = Quaternion(0.0, px[0] / 255.0, px[1] / 255.0, px[2] / 255.0);
  }
  return s;
}

struct ImageConversion {
  ColorImage image;
  /// The real part exceeded the tolerance and was dropped.
  bool real_part_discarded = false;
};

inline ImageConversion qsignal_to_image(const QSignal& s, double real_tol = 1e-9) {
  ImageConversion out{ColorImage(s.cols(), s.rows())};
  double real_energy = 0.0;
  auto quantize = [](double v) {
    const double c = std::min(1.0, std::max(0.0, v));
    return static_cast<std::uint8_t>(std::lround(255.0 * c));
  };
  for (std::size_t p = 0; p < s.size(); ++p) {
    const Quaternion& q = s.data()[p];
    real_energy += q.w() * q.w();
    out.image.pixels[p] = {quantize(q.x()), quantize(q.y()), quantize(q.z())};
  }
  out.real_part_discarded = std::sqrt(real_energy) > real_tol;
  return out;
}

namespace detail {
inline void skip_ppm_space(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

inline std::size_t read_ppm_int(std::istream& in) {
  skip_ppm_space(in);
  std::size_t v = 0;
  bool any = false;
  while (std::isdigit(in.peek())) {
    v = v * 10 + static_cast<std::size_t>(in.get() - '0');
    any = true;
    if (v > (1u << 24)) throw MalformedFile("PPM header value too large");
  }
  if (!any) throw MalformedFile("PPM header: expected an integer");
  return v;
}
}  // namespace detail

inline ColorImage read_ppm(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '6') throw MalformedFile("not a binary PPM (P6)");
  const std::size_t width = detail::read_ppm_int(in);
  const std::size_t height = detail::read_ppm_int(in);
  const std::size_t maxval = detail::read_ppm_int(in);
  if (width == 0 || height == 0) throw MalformedFile("PPM with zero dimension");
  if (maxval != 255) throw UnsupportedMaxval(static_cast<int>(maxval));
  if (!std::isspace(in.get())) throw MalformedFile("PPM header must end with one whitespace byte");
  ColorImage img(width, height);
  for (auto& px : img.pixels) {
    char rgb[3];
    if (!in.read(rgb, 3)) throw MalformedFile("truncated PPM pixel data");
    px = {static_cast<std::uint8_t>(rgb[0]), static_cast<std::uint8_t>(rgb[1]), static_cast<std::uint8_t>(rgb[2])};
  }
  return img;
}

inline void write_ppm(std::ostream& out, const ColorImage& img) {
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  for (const auto& px : img.pixels) out.write(reinterpret_cast<const char*>(px.data()), 3);
}

inline ColorImage load_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedFile("cannot open " + path);
  return read_ppm(in);
}

inline void save_ppm(const std::string& path, const ColorImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_ppm(out, img);
  if (!out) throw InvalidArgument("failed writing " + path);
}

}  // namespace dqup
