#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "neqrx/circuit.hpp"

namespace neqrx {

using Amplitude = std::complex<double>;

/// Dense statevector over 2^width basis states. Basis index bit q is qubit q.
class StateVector {
public:
  explicit StateVector(std::size_t width);  // |0...0>
  StateVector(std::size_t width, std::vector<Amplitude> amps);

  std::size_t width() const { return width_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude& operator[](std::size_t k) { return amps_[k]; }
  const Amplitude& operator[](std::size_t k) const { return amps_[k]; }

  double norm_sq() const;
  void apply(const Gate& g);

private:
  std::size_t width_;
  std::vector<Amplitude> amps_;
};

StateVector run_statevector(const Circuit& c);
StateVector run_statevector(const Circuit& c, StateVector initial);

// max |a_k - b_k| over the register; widths must match.
double max_amplitude_diff(const StateVector& a, const StateVector& b);

// True when the states agree up to one global phase (within tol).
bool states_equal_up_to_phase(const StateVector& a, const StateVector& b,
                              double tol = 1e-10);

std::string basis_bitstring(std::size_t k, std::size_t width);  // MSB first

using Counts = std::map<std::string, std::uint64_t>;

// Multinomial sample of |amplitude|^2; deterministic for a fixed seed.
Counts sample_counts(const StateVector& state, std::uint64_t shots,
                     std::uint64_t seed);

// Exact "counts": one entry per nonzero-probability basis state with
// probability scaled to `shots` (rounded); used as the ideal histogram.
Counts perfect_counts(const StateVector& state, std::uint64_t shots = 8192);

}  // namespace neqrx
