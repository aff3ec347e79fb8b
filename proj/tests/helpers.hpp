#pragma once

#include <random>

#include "neqrx/cipher.hpp"
#include "neqrx/image.hpp"

namespace neqrx::test {

inline GrayImage random_image(std::size_t order, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<std::uint8_t> px(std::size_t{1} << (2 * order));
  for (auto& p : px) p = std::uint8_t(dist(rng));
  return GrayImage(order, std::move(px));
}

inline EncryptionKey random_key(std::size_t n, std::mt19937_64& rng) {
  const std::uint64_t mod = std::uint64_t{1} << n;
  std::uniform_int_distribution<std::uint64_t> coord(1, mod - 1);
  std::uniform_int_distribution<std::uint64_t> mult(0, mod / 2 - 1);
  std::uniform_real_distribution<double> l0(0.01, 0.99);
  std::uniform_real_distribution<double> delta(3.85, 4.0);
  return EncryptionKey{n,
                       coord(rng),
                       coord(rng),
                       2 * mult(rng) + 1,
                       2 * mult(rng) + 1,
                       l0(rng),
                       delta(rng)};
}

// Reference 2x2 image and key used by the golden-value tests.
inline GrayImage sample_image() {
  return GrayImage(1, {255, 0, 200, 100});
}

inline EncryptionKey sample_key() {
  return EncryptionKey{1, 1, 1, 1, 1, 0.5557924316949603, 3.9816188727791215};
}

}  // namespace neqrx::test
