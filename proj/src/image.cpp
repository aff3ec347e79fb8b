#include "neqrx/image.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace neqrx {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Skips whitespace and '#' comments between PGM header tokens.
int next_token(std::istream& in) {
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
    } else if (!std::isspace(c)) {
      in.unget();
      std::string tok;
      in >> tok;
      return std::stoi(tok);
    }
  }
  throw std::runtime_error("pgm: unexpected end of header");
}

}  // namespace

GrayImage::GrayImage(std::size_t order, std::vector<std::uint8_t> pixels)
    : order_(order), pixels_(std::move(pixels)) {
  if (order == 0) throw std::invalid_argument("image order must be >= 1");
  const std::size_t expected = std::size_t{1} << (2 * order);
  if (pixels_.size() != expected)
    throw std::invalid_argument("pixel count does not match 4^n");
}

GrayImage GrayImage::filled(std::size_t order, std::uint8_t value) {
  return GrayImage(order,
                   std::vector<std::uint8_t>(std::size_t{1} << (2 * order), value));
}

std::uint8_t GrayImage::at(std::size_t y, std::size_t x) const {
  if (y >= side() || x >= side()) throw std::out_of_range("pixel coordinate");
  return pixels_[y * side() + x];
}

GrayImage GrayImage::with_pixel(std::size_t y, std::size_t x,
                                std::uint8_t v) const {
  auto px = pixels_;
  px[y * side() + x] = v;
  return GrayImage(order_, std::move(px));
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string magic;
  in >> magic;
  if (magic != "P2" && magic != "P5")
    throw std::runtime_error("pgm: unsupported magic '" + magic + "'");
  const int width = next_token(in);
  const int height = next_token(in);
  const int maxval = next_token(in);
  if (width != height || width <= 0)
    throw std::runtime_error("pgm: image must be square");
  if (!is_power_of_two(static_cast<std::size_t>(width)))
    throw std::runtime_error("pgm: side length must be a power of two");
  if (maxval != 255) throw std::runtime_error("pgm: maxval must be 255");

  std::size_t order = 0;
  while ((std::size_t{1} << order) < static_cast<std::size_t>(width)) ++order;

  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> pixels(count);
  if (magic == "P5") {
    in.get();  // single whitespace after maxval
    in.read(reinterpret_cast<char*>(pixels.data()),
            static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count)
      throw std::runtime_error("pgm: truncated pixel data");
  } else {
    for (auto& p : pixels) {
      int v = next_token(in);
      if (v < 0 || v > 255) throw std::runtime_error("pgm: pixel out of range");
      p = static_cast<std::uint8_t>(v);
    }
  }
  return GrayImage(order, std::move(pixels));
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path,
               bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::size_t side = img.side();
  out << (binary ? "P5" : "P2") << '\n' << side << ' ' << side << "\n255\n";
  if (binary) {
    out.write(reinterpret_cast<const char*>(img.pixels().data()),
              static_cast<std::streamsize>(img.pixel_count()));
  } else {
    for (std::size_t y = 0; y < side; ++y) {
      for (std::size_t x = 0; x < side; ++x)
        out << int(img.at(y, x)) << (x + 1 == side ? '\n' : ' ');
    }
  }
}

}  // namespace neqrx
