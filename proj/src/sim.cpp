#include "neqrx/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace neqrx {

StateVector::StateVector(std::size_t width)
    : width_(width), amps_(std::size_t{1} << width, Amplitude{0.0, 0.0}) {
  if (width > 24) throw std::invalid_argument("statevector width cap is 24");
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t width, std::vector<Amplitude> amps)
    : width_(width), amps_(std::move(amps)) {
  if (amps_.size() != (std::size_t{1} << width))
    throw std::invalid_argument("amplitude count != 2^width");
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

namespace {

// Applies a 2x2 unitary to `target`, restricted to basis states whose
// control bits match.
template <typename Apply2x2>
void for_each_pair(std::vector<Amplitude>& amps, std::size_t target,
                   const std::vector<Control>& controls, Apply2x2 f) {
  const std::size_t tmask = std::size_t{1} << target;
  std::size_t cmask = 0, cval = 0;
  for (const auto& c : controls) {
    const std::size_t bit = std::size_t{1} << c.qubit;
    cmask |= bit;
    if (c.positive) cval |= bit;
  }
  for (std::size_t k = 0; k < amps.size(); ++k) {
    if (k & tmask) continue;
    if ((k & cmask) != cval) continue;
    f(amps[k], amps[k | tmask]);
  }
}

}  // namespace

void StateVector::apply(const Gate& g) {
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::H:
      for_each_pair(amps_, g.target, g.controls, [](Amplitude& a0, Amplitude& a1) {
        const Amplitude t0 = (a0 + a1) * inv_sqrt2;
        const Amplitude t1 = (a0 - a1) * inv_sqrt2;
        a0 = t0;
        a1 = t1;
      });
      break;
    case GateKind::X:
    case GateKind::CX:
    case GateKind::MCX:
      for_each_pair(amps_, g.target, g.controls,
                    [](Amplitude& a0, Amplitude& a1) { std::swap(a0, a1); });
      break;
    case GateKind::SX: {
      const Amplitude p{0.5, 0.5}, m{0.5, -0.5};
      for_each_pair(amps_, g.target, g.controls, [&](Amplitude& a0, Amplitude& a1) {
        const Amplitude t0 = p * a0 + m * a1;
        const Amplitude t1 = m * a0 + p * a1;
        a0 = t0;
        a1 = t1;
      });
      break;
    }
    case GateKind::RZ: {
      const Amplitude e0 = std::polar(1.0, -g.angle / 2);
      const Amplitude e1 = std::polar(1.0, g.angle / 2);
      for_each_pair(amps_, g.target, g.controls, [&](Amplitude& a0, Amplitude& a1) {
        a0 *= e0;
        a1 *= e1;
      });
      break;
    }
  }
}

StateVector run_statevector(const Circuit& c) {
  return run_statevector(c, StateVector(c.width()));
}

StateVector run_statevector(const Circuit& c, StateVector initial) {
  if (initial.width() != c.width())
    throw std::invalid_argument("statevector width != circuit width");
  for (const Gate& g : c.gates()) initial.apply(g);
  return initial;
}

double max_amplitude_diff(const StateVector& a, const StateVector& b) {
  if (a.width() != b.width())
    throw std::invalid_argument("statevector width mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k)
    m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

bool states_equal_up_to_phase(const StateVector& a, const StateVector& b,
                              double tol) {
  if (a.width() != b.width()) return false;
  Amplitude phase{0.0, 0.0};
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (std::abs(a[k]) > tol) {
      phase = b[k] / a[k];
      break;
    }
  }
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (std::abs(a[k] * phase - b[k]) > tol) return false;
  return true;
}

std::string basis_bitstring(std::size_t k, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i)
    if (k & (std::size_t{1} << i)) s[width - 1 - i] = '1';
  return s;
}

Counts sample_counts(const StateVector& state, std::uint64_t shots,
                     std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  // Cumulative distribution over nonzero-probability outcomes.
  std::vector<double> cdf;
  std::vector<std::size_t> outcome;
  double acc = 0.0;
  for (std::size_t k = 0; k < state.dim(); ++k) {
    const double p = std::norm(state[k]);
    if (p > 0.0) {
      acc += p;
      cdf.push_back(acc);
      outcome.push_back(k);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, acc);
  std::map<std::size_t, std::uint64_t> tally;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double r = uni(rng);
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), r);
    const std::size_t idx =
        it == cdf.end() ? outcome.size() - 1
                        : static_cast<std::size_t>(it - cdf.begin());
    ++tally[outcome[idx]];
  }
  Counts counts;
  for (const auto& [k, n] : tally)
    counts[basis_bitstring(k, state.width())] = n;
  return counts;
}

Counts perfect_counts(const StateVector& state, std::uint64_t shots) {
  Counts counts;
  for (std::size_t k = 0; k < state.dim(); ++k) {
    const double p = std::norm(state[k]);
    if (p > 1e-15)
      counts[basis_bitstring(k, state.width())] =
          static_cast<std::uint64_t>(std::llround(p * double(shots)));
  }
  return counts;
}

}  // namespace neqrx
