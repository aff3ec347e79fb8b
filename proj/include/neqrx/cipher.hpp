#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "neqrx/circuit.hpp"
#include "neqrx/image.hpp"

namespace neqrx {

/// GAT parameters (P, Q, s, t) and logistic-map parameters (L0, delta) for a
/// 2^n x 2^n grid. s and t must be odd (invertible mod 2^n), P and Q nonzero,
/// L0 in (0,1), delta in [3.85, 4].
struct EncryptionKey {
  std::size_t n;
  std::uint64_t P, Q, s, t;
  double L0, delta;

  void validate() const;  // throws std::invalid_argument
};

struct Keystream {
  std::vector<std::uint8_t> J;
  std::vector<std::uint8_t> T;  // T[eta] == J[4^n - 1 - eta]
};

// a^{-1} mod 2^n via extended Euclid; a must be odd.
std::uint64_t mod_inverse(std::uint64_t a, std::size_t n);

// L_{eta+1} = delta * L_eta * (1 - L_eta); J[eta] = round(L_eta * 256) mod 256
// using L_eta before the update, for eta = 0 .. 4^n - 1. T is J reversed.
Keystream logistic_keystream(const EncryptionKey& key);

// pixel[eta] ^= J[eta] ^ T[eta]; self-inverse.
GrayImage diffuse(const GrayImage& image, const Keystream& ks);

// X' = (sX + P) mod 2^n, Y' = (tY + Q) mod 2^n.
std::pair<std::size_t, std::size_t> gat_forward(std::size_t y, std::size_t x,
                                                const EncryptionKey& key);
std::pair<std::size_t, std::size_t> gat_inverse(std::size_t y, std::size_t x,
                                                const EncryptionKey& key);

// Diffusion (keystream indexed by original coordinates), then permutation.
GrayImage encrypt(const GrayImage& image, const EncryptionKey& key);
GrayImage decrypt(const GrayImage& image, const EncryptionKey& key);

// In-place ripple-carry adder |A>|B> -> |A>|(A+B) mod 2^n>, final carry
// dropped, carry ancillas restored. Layout: A at 0..n-1, B at n..2n-1,
// n-1 carry ancillas after.
Circuit build_adder_mod_circuit(std::size_t n);

// |Y>|X>|Q>|P> -> |Y>|X>|(tY+Q) mod 2^n>|(sX+P) mod 2^n> by repeated adders.
// Layout: X at 0..n-1, Y at n..2n-1, P at 2n..3n-1, Q at 3n..4n-1, then
// shared carry ancillas.
Circuit build_gat_circuit(const EncryptionKey& key);

// Coordinate-controlled X gates: stage 1 XORs J into the value register,
// stage 2 XORs T. Acts on the NEQR layout (width 2n+8).
Circuit build_diffusion_circuit(const Keystream& ks, std::size_t n);

// Key file: JSON {n,P,Q,s,t,L0,delta}; L0/delta serialized as 17-significant
// digit decimal strings so keystreams are bit-exact across platforms.
EncryptionKey read_key_file(const std::filesystem::path& path);
void write_key_file(const EncryptionKey& key,
                    const std::filesystem::path& path);

}  // namespace neqrx
