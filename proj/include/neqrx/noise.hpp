#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "neqrx/sim.hpp"

namespace neqrx {

using DensityMatrix = Eigen::MatrixXcd;

enum class NoiseChannel {
  AmplitudeDamping,
  PhaseDamping,
  BitFlip,
  PhaseFlip,
  BitPhaseFlip,
  Depolarizing,
};

constexpr std::array kAllChannels = {
    NoiseChannel::AmplitudeDamping, NoiseChannel::PhaseDamping,
    NoiseChannel::BitFlip,          NoiseChannel::PhaseFlip,
    NoiseChannel::BitPhaseFlip,     NoiseChannel::Depolarizing,
};

std::string channel_name(NoiseChannel c);

enum class NoiseMode {
  // Standard CPTP composition: the single-qubit channel is applied to each
  // qubit in turn, summing over all Kraus-index combinations.
  PerQubitIndependent,
  // Two-term global sum with one shared Kraus index on every qubit;
  // generally not trace preserving, kept for side-by-side comparison.
  SharedIndexDiagonal,
};

struct NoiseSpec {
  NoiseChannel channel;
  double gamma;
  std::vector<std::size_t> qubits;
  NoiseMode mode = NoiseMode::PerQubitIndependent;
};

// Single-qubit Kraus operators for the channel at rate gamma.
std::vector<Eigen::Matrix2cd> kraus_operators(NoiseChannel channel,
                                              double gamma);

DensityMatrix to_density(const StateVector& state);

// Width cap 12 qubits for the density-matrix path.
DensityMatrix apply_noise_channel(const DensityMatrix& rho,
                                  const NoiseSpec& spec, std::size_t width);

// Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2, with a <psi|sigma|psi>
// fast path when rho is pure.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

struct SweepPoint {
  NoiseChannel channel;
  double gamma;
  double fidelity;
  double trace;  // of the noisy state; deviates from 1 in shared-index mode
};

// One row per (channel, gamma), channels in enum order, gammas ascending.
std::vector<SweepPoint> noise_sweep(const StateVector& state,
                                    const std::vector<NoiseChannel>& channels,
                                    const std::vector<double>& gamma_grid,
                                    NoiseMode mode);

void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& out);

}  // namespace neqrx
