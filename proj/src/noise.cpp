#include "neqrx/noise.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace neqrx {

std::string channel_name(NoiseChannel c) {
  switch (c) {
    case NoiseChannel::AmplitudeDamping: return "amplitude-damping";
    case NoiseChannel::PhaseDamping: return "phase-damping";
    case NoiseChannel::BitFlip: return "bit-flip";
    case NoiseChannel::PhaseFlip: return "phase-flip";
    case NoiseChannel::BitPhaseFlip: return "bit-phase-flip";
    case NoiseChannel::Depolarizing: return "depolarizing";
  }
  throw std::logic_error("unknown channel");
}

std::vector<Eigen::Matrix2cd> kraus_operators(NoiseChannel channel,
                                              double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("gamma must lie in [0,1]");
  using M = Eigen::Matrix2cd;
  const double g = gamma;
  const double rg = std::sqrt(g);
  const double rng = std::sqrt(1.0 - g);
  const std::complex<double> i{0.0, 1.0};
  std::vector<M> ops;
  M k;
  switch (channel) {
    case NoiseChannel::AmplitudeDamping:
      k << 1, 0, 0, rng;
      ops.push_back(k);
      k << 0, rg, 0, 0;
      ops.push_back(k);
      break;
    case NoiseChannel::PhaseDamping:
      k << rng, 0, 0, rng;
      ops.push_back(k);
      k << rg, 0, 0, 0;
      ops.push_back(k);
      k << 0, 0, 0, rg;
      ops.push_back(k);
      break;
    case NoiseChannel::BitFlip:
      k << rng, 0, 0, rng;
      ops.push_back(k);
      k << 0, rg, rg, 0;
      ops.push_back(k);
      break;
    case NoiseChannel::PhaseFlip:
      k << rng, 0, 0, rng;
      ops.push_back(k);
      k << rg, 0, 0, -rg;
      ops.push_back(k);
      break;
    case NoiseChannel::BitPhaseFlip:
      k << rng, 0, 0, rng;
      ops.push_back(k);
      k << 0, -i * rg, i * rg, 0;
      ops.push_back(k);
      break;
    case NoiseChannel::Depolarizing: {
      const double r3 = std::sqrt(g / 3.0);
      k << rng, 0, 0, rng;
      ops.push_back(k);
      k << 0, r3, r3, 0;
      ops.push_back(k);
      k << 0, -i * r3, i * r3, 0;
      ops.push_back(k);
      k << r3, 0, 0, -r3;
      ops.push_back(k);
      break;
    }
  }
  return ops;
}

DensityMatrix to_density(const StateVector& state) {
  const auto dim = static_cast<Eigen::Index>(state.dim());
  Eigen::VectorXcd psi(dim);
  for (Eigen::Index k = 0; k < dim; ++k) psi(k) = state[std::size_t(k)];
  return psi * psi.adjoint();
}

namespace {

// K_q rho K_q^dagger for a single-qubit operator K on qubit q.
DensityMatrix apply_single_qubit_op(const DensityMatrix& rho,
                                    const Eigen::Matrix2cd& k, std::size_t q) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index bit = Eigen::Index{1} << q;
  DensityMatrix out = rho;
  // Left multiply by K: mix the (r, r|bit) element pairs inside each column,
  // which stays contiguous in Eigen's column-major storage.
  Eigen::VectorXcd tmp(bit);
  for (Eigen::Index c = 0; c < dim; ++c) {
    auto col = out.col(c);
    for (Eigen::Index base = 0; base < dim; base += 2 * bit) {
      auto lo = col.segment(base, bit);
      auto hi = col.segment(base + bit, bit);
      tmp = lo;
      lo = k(0, 0) * tmp + k(0, 1) * hi;
      hi = k(1, 0) * tmp + k(1, 1) * hi;
    }
  }
  // Right multiply by K^dagger: mix whole column pairs.
  Eigen::VectorXcd colbuf(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c & bit) continue;
    auto col0 = out.col(c);
    auto col1 = out.col(c | bit);
    colbuf = col0;
    col0 = std::conj(k(0, 0)) * colbuf + std::conj(k(0, 1)) * col1;
    col1 = std::conj(k(1, 0)) * colbuf + std::conj(k(1, 1)) * col1;
  }
  return out;
}

// acc += K_q rho K_q^dagger, exploiting that K is diagonal or antidiagonal
// (true for every channel here); falls back to the generic path otherwise.
void accumulate_kraus_term(const DensityMatrix& rho, const Eigen::Matrix2cd& k,
                           std::size_t q, DensityMatrix& acc) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index bit = Eigen::Index{1} << q;
  const bool diagonal = k(0, 1) == 0.0 && k(1, 0) == 0.0;
  const bool antidiagonal = k(0, 0) == 0.0 && k(1, 1) == 0.0;
  if (!diagonal && !antidiagonal) {
    acc += apply_single_qubit_op(rho, k, q);
    return;
  }
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (diagonal) {
      // (K rho K^+)(r,c) = k[r_q] conj(k[c_q]) rho(r,c).
      const auto kc = std::conj(c & bit ? k(1, 1) : k(0, 0));
      auto dst = acc.col(c);
      const auto src = rho.col(c);
      for (Eigen::Index base = 0; base < dim; base += 2 * bit) {
        dst.segment(base, bit) += (k(0, 0) * kc) * src.segment(base, bit);
        dst.segment(base + bit, bit) +=
            (k(1, 1) * kc) * src.segment(base + bit, bit);
      }
    } else {
      // (K rho K^+)(r,c) = k[r_q, ~r_q] conj(k[c_q, ~c_q]) rho(r^bit, c^bit).
      const auto kc = std::conj(c & bit ? k(1, 0) : k(0, 1));
      auto dst = acc.col(c);
      const auto src = rho.col(c ^ bit);
      for (Eigen::Index base = 0; base < dim; base += 2 * bit) {
        dst.segment(base, bit) += (k(0, 1) * kc) * src.segment(base + bit, bit);
        dst.segment(base + bit, bit) += (k(1, 0) * kc) * src.segment(base, bit);
      }
    }
  }
}

}  // namespace

DensityMatrix apply_noise_channel(const DensityMatrix& rho,
                                  const NoiseSpec& spec, std::size_t width) {
  if (width > 12)
    throw std::invalid_argument("density-matrix width cap is 12 qubits");
  if (rho.rows() != rho.cols() ||
      rho.rows() != (Eigen::Index{1} << width))
    throw std::invalid_argument("density matrix dimension != 2^width");
  for (auto q : spec.qubits)
    if (q >= width) throw std::invalid_argument("noise qubit out of range");

  const auto kraus = kraus_operators(spec.channel, spec.gamma);
  if (spec.qubits.empty()) return rho;

  if (spec.mode == NoiseMode::PerQubitIndependent) {
    DensityMatrix out = rho;
    DensityMatrix acc(rho.rows(), rho.cols());
    for (auto q : spec.qubits) {
      acc.setZero();
      for (const auto& k : kraus) accumulate_kraus_term(out, k, q, acc);
      out.swap(acc);
    }
    return out;
  }

  // Shared-index mode: one shared Kraus index across all qubits, two terms.
  DensityMatrix acc = DensityMatrix::Zero(rho.rows(), rho.cols());
  for (std::size_t m = 0; m < 2 && m < kraus.size(); ++m) {
    DensityMatrix term = rho;
    for (auto q : spec.qubits)
      term = apply_single_qubit_op(term, kraus[m], q);
    acc += term;
  }
  return acc;
}

namespace {

DensityMatrix hermitian_sqrt(const DensityMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(m);
  Eigen::VectorXd vals = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * vals.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("density matrix dimension mismatch");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8 ||
      (sigma - sigma.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("fidelity requires Hermitian inputs");

  // Pure rho: F = <psi|sigma|psi> = Tr(rho sigma).
  const double purity = (rho * rho).trace().real();
  if (std::abs(purity - 1.0) < 1e-10) {
    const double f = (rho * sigma).trace().real();
    return std::clamp(f, 0.0, 1.0);
  }

  const DensityMatrix root = hermitian_sqrt(rho);
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(root * sigma * root);
  const double tr = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

std::vector<SweepPoint> noise_sweep(const StateVector& state,
                                    const std::vector<NoiseChannel>& channels,
                                    const std::vector<double>& gamma_grid,
                                    NoiseMode mode) {
  std::vector<std::size_t> all_qubits(state.width());
  for (std::size_t q = 0; q < state.width(); ++q) all_qubits[q] = q;
  const DensityMatrix rho = to_density(state);

  std::vector<SweepPoint> points;
  for (auto channel : channels) {
    for (double gamma : gamma_grid) {
      const NoiseSpec spec{channel, gamma, all_qubits, mode};
      const DensityMatrix noisy =
          apply_noise_channel(rho, spec, state.width());
      // rho is pure, so F = <psi|noisy|psi>.
      std::complex<double> overlap = 0.0;
      for (Eigen::Index r = 0; r < noisy.rows(); ++r) {
        if (state[std::size_t(r)] == 0.0) continue;
        for (Eigen::Index c = 0; c < noisy.cols(); ++c)
          overlap += std::conj(state[std::size_t(r)]) * noisy(r, c) *
                     state[std::size_t(c)];
      }
      points.push_back({channel, gamma,
                        std::clamp(overlap.real(), 0.0, 1.0),
                        noisy.trace().real()});
    }
  }
  return points;
}

void write_sweep_csv(const std::vector<SweepPoint>& points,
                     std::ostream& out) {
  out << "channel,gamma,fidelity,trace\n";
  out.precision(12);
  for (const auto& p : points)
    out << channel_name(p.channel) << ',' << p.gamma << ',' << p.fidelity
        << ',' << p.trace << '\n';
}

}  // namespace neqrx
