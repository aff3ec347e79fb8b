#include "neqrx/cipher.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace neqrx {

namespace {

std::uint64_t modulus(std::size_t n) { return std::uint64_t{1} << n; }

}  // namespace

void EncryptionKey::validate() const {
  if (n == 0 || n > 16) throw std::invalid_argument("key: n out of range");
  const std::uint64_t mod = modulus(n);
  if (P == 0 || Q == 0) throw std::invalid_argument("key: P and Q must be nonzero");
  if (P >= mod || Q >= mod)
    throw std::invalid_argument("key: P, Q must be < 2^n");
  if (s == 0 || t == 0 || s % 2 == 0 || t % 2 == 0)
    throw std::invalid_argument("key: s and t must be odd (co-prime with 2^n)");
  if (!(L0 > 0.0 && L0 < 1.0))
    throw std::invalid_argument("key: L0 must lie in (0,1)");
  if (!(delta >= 3.85 && delta <= 4.0))
    throw std::invalid_argument("key: delta must lie in [3.85, 4]");
}

std::uint64_t mod_inverse(std::uint64_t a, std::size_t n) {
  if (a % 2 == 0)
    throw std::invalid_argument("even values are not invertible mod 2^n");
  const std::int64_t mod = std::int64_t(modulus(n));
  std::int64_t r0 = mod, r1 = std::int64_t(a % std::uint64_t(mod));
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  std::int64_t inv = s0 % mod;
  if (inv < 0) inv += mod;
  return std::uint64_t(inv);
}

Keystream logistic_keystream(const EncryptionKey& key) {
  key.validate();
  const std::size_t count = std::size_t{1} << (2 * key.n);
  Keystream ks;
  ks.J.reserve(count);
  double L = key.L0;
  for (std::size_t eta = 0; eta < count; ++eta) {
    // round-half-away-from-zero on the pre-update L, then mod 256
    const auto r = std::uint64_t(std::floor(L * 256.0 + 0.5));
    ks.J.push_back(std::uint8_t(r % 256));
    L = key.delta * L * (1.0 - L);
  }
  ks.T.assign(ks.J.rbegin(), ks.J.rend());
  return ks;
}

GrayImage diffuse(const GrayImage& image, const Keystream& ks) {
  if (ks.J.size() != image.pixel_count() || ks.T.size() != image.pixel_count())
    throw std::invalid_argument("keystream length != pixel count");
  std::vector<std::uint8_t> out(image.pixel_count());
  for (std::size_t eta = 0; eta < out.size(); ++eta)
    out[eta] = image[eta] ^ ks.J[eta] ^ ks.T[eta];
  return GrayImage(image.order(), std::move(out));
}

std::pair<std::size_t, std::size_t> gat_forward(std::size_t y, std::size_t x,
                                                const EncryptionKey& key) {
  const std::uint64_t mod = modulus(key.n);
  return {std::size_t((key.t * y + key.Q) % mod),
          std::size_t((key.s * x + key.P) % mod)};
}

std::pair<std::size_t, std::size_t> gat_inverse(std::size_t y, std::size_t x,
                                                const EncryptionKey& key) {
  const std::uint64_t mod = modulus(key.n);
  const std::uint64_t s_inv = mod_inverse(key.s, key.n);
  const std::uint64_t t_inv = mod_inverse(key.t, key.n);
  // x - P realized as x + (~P + 1) mod 2^n
  const std::uint64_t x_shift = (x + ((~key.P + 1) & (mod - 1))) % mod;
  const std::uint64_t y_shift = (y + ((~key.Q + 1) & (mod - 1))) % mod;
  return {std::size_t((t_inv * y_shift) % mod),
          std::size_t((s_inv * x_shift) % mod)};
}

GrayImage encrypt(const GrayImage& image, const EncryptionKey& key) {
  key.validate();
  if (image.order() != key.n)
    throw std::invalid_argument("key order != image order");
  const GrayImage diffused = diffuse(image, logistic_keystream(key));
  const std::size_t side = image.side();
  std::vector<std::uint8_t> out(image.pixel_count());
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const auto [yp, xp] = gat_forward(y, x, key);
      out[yp * side + xp] = diffused.at(y, x);
    }
  }
  return GrayImage(image.order(), std::move(out));
}

GrayImage decrypt(const GrayImage& image, const EncryptionKey& key) {
  key.validate();
  if (image.order() != key.n)
    throw std::invalid_argument("key order != image order");
  const std::size_t side = image.side();
  std::vector<std::uint8_t> permuted(image.pixel_count());
  for (std::size_t yp = 0; yp < side; ++yp) {
    for (std::size_t xp = 0; xp < side; ++xp) {
      const auto [y, x] = gat_inverse(yp, xp, key);
      permuted[y * side + x] = image.at(yp, xp);
    }
  }
  return diffuse(GrayImage(image.order(), std::move(permuted)),
                 logistic_keystream(key));
}

namespace {

// VBE carry block: leaves b = a^b and c_out ^= maj(c_in, a, b).
void emit_carry(Circuit& c, std::size_t c_in, std::size_t a, std::size_t b,
                std::size_t c_out, bool has_c_in) {
  c.add(Gate::mcx({{a, true}, {b, true}}, c_out));
  c.add(Gate::cx(a, b));
  if (has_c_in) c.add(Gate::mcx({{c_in, true}, {b, true}}, c_out));
}

void emit_carry_inverse(Circuit& c, std::size_t c_in, std::size_t a,
                        std::size_t b, std::size_t c_out, bool has_c_in) {
  if (has_c_in) c.add(Gate::mcx({{c_in, true}, {b, true}}, c_out));
  c.add(Gate::cx(a, b));
  c.add(Gate::mcx({{a, true}, {b, true}}, c_out));
}

// Emits |A>|B> -> |A>|(A+B) mod 2^n> on the given qubit triplets; carries
// must be clean and are restored.
void emit_adder(Circuit& c, const std::vector<std::size_t>& a,
                const std::vector<std::size_t>& b,
                const std::vector<std::size_t>& carry) {
  const std::size_t n = a.size();
  if (n == 1) {
    c.add(Gate::cx(a[0], b[0]));
    return;
  }
  // Carries c_1..c_{n-1}; the final carry is never computed (mod 2^n).
  for (std::size_t i = 0; i + 1 < n; ++i)
    emit_carry(c, i > 0 ? carry[i - 1] : 0, a[i], b[i], carry[i], i > 0);
  c.add(Gate::cx(a[n - 1], b[n - 1]));
  c.add(Gate::cx(carry[n - 2], b[n - 1]));
  for (std::size_t i = n - 1; i-- > 0;) {
    emit_carry_inverse(c, i > 0 ? carry[i - 1] : 0, a[i], b[i], carry[i],
                       i > 0);
    c.add(Gate::cx(a[i], b[i]));
    if (i > 0) c.add(Gate::cx(carry[i - 1], b[i]));
  }
}

std::vector<std::size_t> range(std::size_t first, std::size_t count) {
  std::vector<std::size_t> r(count);
  for (std::size_t i = 0; i < count; ++i) r[i] = first + i;
  return r;
}

}  // namespace

Circuit build_adder_mod_circuit(std::size_t n) {
  if (n == 0) throw std::invalid_argument("adder: n must be >= 1");
  Circuit c(2 * n);
  std::vector<std::size_t> carry;
  for (std::size_t i = 0; i + 1 < n; ++i) carry.push_back(c.add_ancilla());
  emit_adder(c, range(0, n), range(n, n), carry);
  return c;
}

Circuit build_gat_circuit(const EncryptionKey& key) {
  key.validate();
  const std::size_t n = key.n;
  Circuit c(4 * n);
  std::vector<std::size_t> carry;
  for (std::size_t i = 0; i + 1 < n; ++i) carry.push_back(c.add_ancilla());
  const auto x = range(0, n), y = range(n, n);
  const auto p = range(2 * n, n), q = range(3 * n, n);
  for (std::uint64_t i = 0; i < key.s; ++i) emit_adder(c, x, p, carry);
  for (std::uint64_t i = 0; i < key.t; ++i) emit_adder(c, y, q, carry);
  return c;
}

Circuit build_diffusion_circuit(const Keystream& ks, std::size_t n) {
  const std::size_t count = std::size_t{1} << (2 * n);
  if (ks.J.size() != count || ks.T.size() != count)
    throw std::invalid_argument("keystream length != 4^n");
  Circuit c(2 * n + 8);
  auto emit_stage = [&](const std::vector<std::uint8_t>& bytes) {
    for (std::size_t eta = 0; eta < count; ++eta) {
      if (bytes[eta] == 0) continue;
      std::vector<Control> ctls;
      for (std::size_t b = 0; b < 2 * n; ++b)
        ctls.push_back({b, ((eta >> b) & 1) != 0});
      for (std::size_t bit = 0; bit < 8; ++bit)
        if ((bytes[eta] >> bit) & 1)
          c.add(Gate::mcx(ctls, 2 * n + bit));
    }
  };
  emit_stage(ks.J);
  emit_stage(ks.T);
  return c;
}

namespace {

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double parse_real(const nlohmann::json& j, const char* field) {
  const auto& v = j.at(field);
  if (v.is_string()) return std::stod(v.get<std::string>());
  return v.get<double>();
}

}  // namespace

EncryptionKey read_key_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open key file " + path.string());
  nlohmann::json j;
  in >> j;
  EncryptionKey key{
      j.at("n").get<std::size_t>(),  j.at("P").get<std::uint64_t>(),
      j.at("Q").get<std::uint64_t>(), j.at("s").get<std::uint64_t>(),
      j.at("t").get<std::uint64_t>(), parse_real(j, "L0"),
      parse_real(j, "delta")};
  key.validate();
  return key;
}

void write_key_file(const EncryptionKey& key,
                    const std::filesystem::path& path) {
  key.validate();
  nlohmann::json j{{"n", key.n},         {"P", key.P},
                   {"Q", key.Q},         {"s", key.s},
                   {"t", key.t},         {"L0", format_real(key.L0)},
                   {"delta", format_real(key.delta)}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write key file " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace neqrx
