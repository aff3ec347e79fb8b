#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace neqrx {

/// Square 2^n x 2^n grayscale image, 8-bit intensities, row-major.
/// Linear index eta = Y * 2^n + X (Y = row, X = column).
class GrayImage {
public:
  GrayImage(std::size_t order, std::vector<std::uint8_t> pixels);

  static GrayImage filled(std::size_t order, std::uint8_t value);

  std::size_t order() const { return order_; }
  std::size_t side() const { return std::size_t{1} << order_; }
  std::size_t pixel_count() const { return pixels_.size(); }

  std::uint8_t at(std::size_t y, std::size_t x) const;
  std::uint8_t operator[](std::size_t eta) const { return pixels_[eta]; }
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }

  GrayImage with_pixel(std::size_t y, std::size_t x, std::uint8_t v) const;

  bool operator==(const GrayImage& other) const = default;

private:
  std::size_t order_;
  std::vector<std::uint8_t> pixels_;
};

// PGM (P2 ASCII / P5 raw) with maxval 255; side must be a power of two.
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const GrayImage& img, const std::filesystem::path& path,
               bool binary = true);

}  // namespace neqrx
