#include "neqrx/neqr.hpp"

#include <cmath>
#include <stdexcept>

namespace neqrx {

std::size_t basis_index(std::uint8_t v, std::size_t y, std::size_t x,
                        std::size_t n) {
  const std::size_t side = std::size_t{1} << n;
  return (std::size_t{v} << (2 * n)) + y * side + x;
}

StateVector neqr_state(const GrayImage& image) {
  const std::size_t n = image.order();
  StateVector state(neqr_width(n));
  state[0] = 0.0;
  const double amp = std::ldexp(1.0, -int(n));  // 2^-n, exact
  const std::size_t side = image.side();
  for (std::size_t y = 0; y < side; ++y)
    for (std::size_t x = 0; x < side; ++x)
      state[basis_index(image.at(y, x), y, x, n)] = amp;
  return state;
}

namespace {

std::vector<Control> coordinate_controls(std::size_t y, std::size_t x,
                                         std::size_t n) {
  std::vector<Control> ctls;
  ctls.reserve(2 * n);
  for (std::size_t b = 0; b < n; ++b)
    ctls.push_back({n + b, ((y >> b) & 1) != 0});  // Y bits, qubits n..2n-1
  for (std::size_t b = 0; b < n; ++b)
    ctls.push_back({b, ((x >> b) & 1) != 0});  // X bits, qubits 0..n-1
  return ctls;
}

}  // namespace

Circuit build_naive_neqr_circuit(const GrayImage& image) {
  const std::size_t n = image.order();
  Circuit c(neqr_width(n));
  for (std::size_t q = 0; q < 2 * n; ++q) c.add(Gate::h(q));
  const std::size_t side = image.side();
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const std::uint8_t v = image.at(y, x);
      for (std::size_t bit = 0; bit < 8; ++bit) {
        if ((v >> bit) & 1)
          c.add(Gate::mcx(coordinate_controls(y, x, n), 2 * n + bit));
      }
    }
  }
  return c;
}

ReconstructionResult reconstruct_image(const Counts& counts, std::size_t n) {
  const std::size_t width = neqr_width(n);
  const std::size_t side = std::size_t{1} << n;
  const std::size_t num_pixels = side * side;

  // best[eta] = (count, value); ties keep the smaller value.
  std::vector<std::pair<std::uint64_t, std::uint8_t>> best(num_pixels,
                                                           {0, 0});
  std::vector<bool> seen(num_pixels, false);
  for (const auto& [bits, cnt] : counts) {
    if (bits.size() != width)
      throw std::invalid_argument("bitstring length != 2n+8");
    std::size_t k = 0;
    for (char ch : bits) {
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("bitstring contains non-binary character");
      k = (k << 1) | std::size_t(ch - '0');
    }
    const std::size_t eta = k & (num_pixels - 1);
    const auto v = static_cast<std::uint8_t>(k >> (2 * n));
    auto& slot = best[eta];
    if (!seen[eta] || cnt > slot.first ||
        (cnt == slot.first && v < slot.second)) {
      slot = {cnt, v};
    }
    seen[eta] = true;
  }

  std::vector<std::uint8_t> pixels(num_pixels, 0);
  std::vector<std::size_t> uncovered;
  for (std::size_t eta = 0; eta < num_pixels; ++eta) {
    if (seen[eta])
      pixels[eta] = best[eta].second;
    else
      uncovered.push_back(eta);
  }
  return {GrayImage(n, std::move(pixels)), std::move(uncovered)};
}

}  // namespace neqrx
