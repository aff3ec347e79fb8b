#pragma once

#include <vector>

#include "neqrx/circuit.hpp"
#include "neqrx/image.hpp"
#include "neqrx/sim.hpp"

namespace neqrx {

// Qubit layout for a 2^n x 2^n image: qubits 0..n-1 hold X, n..2n-1 hold Y,
// 2n..2n+7 the pixel value. Basis index k = v*4^n + Y*2^n + X; bitstrings
// print MSB-first as c7..c0 y_{n-1}..y0 x_{n-1}..x0.
inline std::size_t neqr_width(std::size_t n) { return 2 * n + 8; }

std::size_t basis_index(std::uint8_t v, std::size_t y, std::size_t x,
                        std::size_t n);

// Amplitude 2^-n at (f(Y,X), Y, X) for every pixel, zero elsewhere.
StateVector neqr_state(const GrayImage& image);

// H on the 2n coordinate qubits, then one MCX per set value bit per pixel,
// controls matching |YX> (zero bits as negative controls).
Circuit build_naive_neqr_circuit(const GrayImage& image);

struct ReconstructionResult {
  GrayImage image;
  // Coordinates (eta = Y*2^n + X) never observed; their pixels default to 0.
  std::vector<std::size_t> uncovered;
};

// Per coordinate, picks the pixel value of the most frequent observed basis
// state; ties break toward the smaller value.
ReconstructionResult reconstruct_image(const Counts& counts, std::size_t n);

}  // namespace neqrx
