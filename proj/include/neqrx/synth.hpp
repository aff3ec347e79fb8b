#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "neqrx/circuit.hpp"
#include "neqrx/image.hpp"

namespace neqrx {

/// Product term over the 2n coordinate variables. Bit b of a minterm is
/// variable b (X bits 0..n-1, Y bits n..2n-1); a variable outside `care`
/// is a dash.
struct Cube {
  std::uint32_t care = 0;   // 1 = literal present
  std::uint32_t value = 0;  // literal polarity, only bits under `care`

  std::size_t num_vars_set(std::size_t num_vars) const;
  bool contains(std::uint32_t minterm) const {
    return (minterm & care) == value;
  }
  bool intersects(const Cube& other) const {
    const std::uint32_t both = care & other.care;
    return (value & both) == (other.value & both);
  }
  // PLA-style text, most significant variable first (Y bits then X bits).
  std::string to_string(std::size_t num_vars) const;

  bool operator==(const Cube&) const = default;
};

using Cover = std::vector<Cube>;

// Minimum pairwise-disjoint cover of `on_set` (exact branch-and-bound for
// num_vars <= 8, greedy adjacent-cube merging beyond). Cascaded controlled-X
// gates XOR their targets, so overlapping cubes would corrupt the encoding;
// disjointness keeps each minterm flipped exactly once.
Cover minimize_cover(const std::vector<std::uint32_t>& on_set,
                     std::size_t num_vars);

void dump_pla(const Cover& cover, std::size_t num_vars, std::ostream& out);

// H layer plus one controlled-X per cube per bit-plane; simulates to the
// same state as the naive encoder with at most as many controlled gates.
Circuit synthesize_minimized_encoder(const GrayImage& image);

// Rewrites groups of >=3 controlled-X gates sharing one control pattern of
// >=2 controls into compute/fan-out/uncompute through a clean ancilla.
Circuit factor_shared_controls(const Circuit& circuit);

}  // namespace neqrx
