// neqrx: NEQR image encoding, circuit synthesis, chaotic encryption, noise
// sweeps, and image-quality metrics from the command line.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "neqrx/cipher.hpp"
#include "neqrx/metrics.hpp"
#include "neqrx/neqr.hpp"
#include "neqrx/noise.hpp"
#include "neqrx/synth.hpp"

using namespace neqrx;

namespace {

// Distinct exit codes for the documented failure classes.
constexpr int kExitGeneric = 1;
constexpr int kExitBadPgm = 2;
constexpr int kExitBadKey = 3;
constexpr int kExitBadWidth = 4;   // image side not a square power of two
constexpr int kExitTooWide = 5;    // register width beyond simulator caps

struct ExitError {
  int code;
  std::string message;
};

GrayImage load_image(const std::string& path) {
  try {
    return read_pgm(path);
  } catch (const std::exception& e) {
    const std::string what = e.what();
    const bool dims = what.find("power of two") != std::string::npos ||
                      what.find("square") != std::string::npos;
    throw ExitError{dims ? kExitBadWidth : kExitBadPgm, what};
  }
}

EncryptionKey load_key(const std::string& path) {
  try {
    return read_key_file(path);
  } catch (const std::exception& e) {
    throw ExitError{kExitBadKey, e.what()};
  }
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw ExitError{kExitGeneric, "cannot write " + path};
  return file;
}

std::vector<double> parse_gammas(const std::string& spec) {
  // "a:b:step" inclusive grid; a single number is a one-point grid.
  std::vector<double> grid;
  double a = 0.0, b = 0.0, step = 0.0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) == 3) {
    if (step <= 0.0 || b < a)
      throw ExitError{kExitGeneric, "bad --gammas range " + spec};
    for (double g = a; g <= b + 1e-12; g += step)
      grid.push_back(std::min(g, b));
  } else if (std::sscanf(spec.c_str(), "%lf", &a) == 1) {
    grid.push_back(a);
  } else {
    throw ExitError{kExitGeneric, "cannot parse --gammas " + spec};
  }
  for (double g : grid)
    if (g < 0.0 || g > 1.0)
      throw ExitError{kExitGeneric, "--gammas values must lie in [0,1]"};
  return grid;
}

void require_small_register(std::size_t n, bool allow_large) {
  // n = 6 (a 64x64 image) already needs a 2^20-amplitude statevector.
  if (neqr_width(n) > 24)
    throw ExitError{kExitTooWide,
                    "statevector width " + std::to_string(neqr_width(n)) +
                        " exceeds the 24-qubit cap"};
  if (n >= 5 && !allow_large)
    throw ExitError{kExitTooWide,
                    "images of side >= 32 are gated behind --allow-large "
                    "(statevector has 2^" +
                        std::to_string(neqr_width(n)) + " amplitudes)"};
}

int cmd_encode(const std::string& image_path, const std::string& out_prefix,
               std::uint64_t shots, std::uint64_t seed, bool basis,
               bool allow_large) {
  const auto img = load_image(image_path);
  require_small_register(img.order(), allow_large);

  Circuit circuit = build_naive_neqr_circuit(img);
  if (basis) circuit = transpile_to_basis(circuit);

  const std::string prefix = out_prefix.empty() ? "encode" : out_prefix;
  {
    std::ofstream net(prefix + ".netlist");
    if (!net) throw ExitError{kExitGeneric, "cannot write netlist"};
    dump_netlist(circuit, net);
  }
  const auto state = run_statevector(circuit);
  {
    std::ofstream amps(prefix + ".state");
    if (!amps) throw ExitError{kExitGeneric, "cannot write state dump"};
    amps.precision(17);
    for (std::size_t k = 0; k < state.dim(); ++k) {
      if (state[k] == 0.0) continue;
      amps << basis_bitstring(k, state.width()) << ' ' << state[k].real()
           << ' ' << state[k].imag() << '\n';
    }
  }
  {
    std::ofstream hist(prefix + ".counts.csv");
    if (!hist) throw ExitError{kExitGeneric, "cannot write histogram"};
    hist << "bitstring,count\n";
    for (const auto& [bits, count] : sample_counts(state, shots, seed))
      hist << bits << ',' << count << '\n';
  }
  std::printf("wrote %s.netlist, %s.state, %s.counts.csv (%llu shots)\n",
              prefix.c_str(), prefix.c_str(), prefix.c_str(),
              static_cast<unsigned long long>(shots));
  return 0;
}

int cmd_synth(const std::string& image_path, const std::string& out_path,
              const std::string& format, bool allow_large) {
  const auto img = load_image(image_path);
  require_small_register(img.order(), allow_large);

  struct Row {
    const char* name;
    Circuit circuit;
  };
  const auto minimized = synthesize_minimized_encoder(img);
  std::vector<Row> rows;
  rows.push_back({"naive", build_naive_neqr_circuit(img)});
  rows.push_back({"minimized", minimized});
  rows.push_back({"factored", factor_shared_controls(minimized)});

  std::ofstream file;
  auto& out = open_out(file, out_path);
  const std::size_t naive_cost = quantum_cost(transpile_to_basis(rows[0].circuit));
  if (format == "csv")
    out << "variant,gates,controlled,multi_control,basis_cost,basis_depth,"
           "cost_ratio\n";
  for (const auto& row : rows) {
    const auto lowered = transpile_to_basis(row.circuit);
    const std::size_t cost = quantum_cost(lowered);
    const double ratio = double(cost) / double(naive_cost);
    if (format == "csv") {
      out << row.name << ',' << row.circuit.gate_count() << ','
          << row.circuit.controlled_count() << ','
          << row.circuit.controlled_count(2) << ',' << cost << ','
          << circuit_depth(lowered) << ',' << ratio << '\n';
    } else {
      char line[160];
      std::snprintf(line, sizeof line,
                    "%-9s  gates %4zu  controlled %4zu  multi-control %4zu  "
                    "basis cost %5zu  depth %5zu  ratio %.3f\n",
                    row.name, row.circuit.gate_count(),
                    row.circuit.controlled_count(),
                    row.circuit.controlled_count(2), cost,
                    circuit_depth(lowered), ratio);
      out << line;
    }
  }
  return 0;
}

int cmd_crypt(bool decrypting, const std::string& in_path,
              const std::string& key_path, const std::string& out_path) {
  const auto img = load_image(in_path);
  const auto key = load_key(key_path);
  if (key.n != img.order())
    throw ExitError{kExitBadKey, "key is for a 2^" + std::to_string(key.n) +
                                     "-pixel side, image side is " +
                                     std::to_string(img.side())};
  const auto out = decrypting ? decrypt(img, key) : encrypt(img, key);
  write_pgm(out, out_path.empty() ? "out.pgm" : out_path);
  return 0;
}

int cmd_analyze(const std::string& a_path, const std::string& b_path,
                const std::string& out_path, const std::string& format) {
  const auto a = load_image(a_path);
  const auto b = load_image(b_path);
  std::ofstream file;
  auto& out = open_out(file, out_path);
  try {
    const auto report = analyze_pair(a, b);
    if (format == "csv")
      write_report_csv(report, out);
    else
      write_report_table(report, out);
  } catch (const std::exception& e) {
    throw ExitError{kExitGeneric, e.what()};
  }
  return 0;
}

int cmd_noise_sweep(const std::string& image_path, const std::string& gammas,
                    const std::string& mode_name, const std::string& out_path,
                    bool allow_large) {
  const auto img = load_image(image_path);
  require_small_register(img.order(), allow_large);
  if (neqr_width(img.order()) > 12)
    throw ExitError{kExitTooWide,
                    "density-matrix sweeps are capped at 12 qubits; a side-" +
                        std::to_string(img.side()) + " image needs " +
                        std::to_string(neqr_width(img.order()))};
  const auto grid = parse_gammas(gammas);
  const NoiseMode mode = mode_name == "shared-index"
                             ? NoiseMode::SharedIndexDiagonal
                             : NoiseMode::PerQubitIndependent;
  const auto points =
      noise_sweep(neqr_state(img), {kAllChannels.begin(), kAllChannels.end()},
                  grid, mode);
  std::ofstream file;
  auto& out = open_out(file, out_path);
  write_sweep_csv(points, out);
  return 0;
}

int cmd_keygen(std::size_t n, std::uint64_t seed, const std::string& out_path) {
  if (n == 0 || n > 12)
    throw ExitError{kExitBadKey, "key order n must be in [1,12]"};
  std::mt19937_64 rng(seed);
  const std::uint64_t mod = std::uint64_t{1} << n;
  EncryptionKey key;
  key.n = n;
  key.P = 1 + rng() % (mod - 1 ? mod - 1 : 1);
  key.Q = 1 + rng() % (mod - 1 ? mod - 1 : 1);
  key.s = (2 * (rng() % (mod / 2 ? mod / 2 : 1)) + 1) % mod;
  key.t = (2 * (rng() % (mod / 2 ? mod / 2 : 1)) + 1) % mod;
  std::uniform_real_distribution<double> l0(0.05, 0.95), d(3.85, 4.0);
  key.L0 = l0(rng);
  key.delta = d(rng);
  write_key_file(key, out_path.empty() ? "key.json" : out_path);
  std::printf(
      "wrote %s\n"
      "keyspace: P,Q,s,t contribute ~2^%zu combinations; L0 and delta are\n"
      "real-valued, so the nominal keyspace is unbounded (at IEEE-double\n"
      "resolution the two of them alone add roughly 2^100 distinct keys).\n",
      out_path.empty() ? "key.json" : out_path.c_str(),
      2 * n + 2 * (n - 1));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NEQR quantum image encryption toolkit"};
  app.require_subcommand(1);

  std::string image, image_b, key_path, out_path, format = "table";
  std::string gammas = "0:1:0.1", noise_mode = "cptp";
  std::uint64_t shots = 8192, seed = 2024;
  std::size_t key_n = 1;
  bool basis = false, allow_large = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "output path (default: stdout/cwd)");
  };

  auto* encode = app.add_subcommand("encode", "image -> circuit + state dump");
  encode->add_option("image", image, "input PGM")->required();
  encode->add_option("--shots", shots, "measurement shots")
      ->check(CLI::PositiveNumber);
  encode->add_option("--seed", seed, "sampling seed");
  encode->add_flag("--basis", basis, "lower to the H/X/SX/RZ/CX basis");
  encode->add_flag("--allow-large", allow_large, "permit side >= 32 images");
  add_common(encode);

  auto* synth = app.add_subcommand(
      "synth", "naive vs minimized vs factored encoder cost table");
  synth->add_option("image", image, "input PGM")->required();
  synth->add_option("--format", format, "csv or table")
      ->check(CLI::IsMember({"csv", "table"}));
  synth->add_flag("--allow-large", allow_large, "permit side >= 32 images");
  add_common(synth);

  auto* enc = app.add_subcommand("encrypt", "encrypt a PGM with a key file");
  enc->add_option("image", image, "input PGM")->required();
  enc->add_option("--key", key_path, "key JSON")->required();
  add_common(enc);

  auto* dec = app.add_subcommand("decrypt", "decrypt a PGM with a key file");
  dec->add_option("image", image, "input PGM")->required();
  dec->add_option("--key", key_path, "key JSON")->required();
  add_common(dec);

  auto* analyze =
      app.add_subcommand("analyze", "quality metrics for an image pair");
  analyze->add_option("image_a", image, "first PGM")->required();
  analyze->add_option("image_b", image_b, "second PGM")->required();
  analyze->add_option("--format", format, "csv or table")
      ->check(CLI::IsMember({"csv", "table"}));
  add_common(analyze);

  auto* sweep = app.add_subcommand(
      "noise-sweep", "six-channel fidelity sweep of the encoded state");
  sweep->add_option("image", image, "input PGM")->required();
  sweep->add_option("--gammas", gammas, "grid a:b:step (default 0:1:0.1)");
  sweep->add_option("--noise-mode", noise_mode, "cptp or shared-index")
      ->check(CLI::IsMember({"cptp", "shared-index"}));
  sweep->add_flag("--allow-large", allow_large, "permit side >= 32 images");
  add_common(sweep);

  auto* keygen = app.add_subcommand("keygen", "emit a random valid key");
  keygen->add_option("--n", key_n, "image order (side = 2^n)");
  keygen->add_option("--seed", seed, "RNG seed");
  add_common(keygen);

  CLI11_PARSE(app, argc, argv);

  try {
    if (encode->parsed())
      return cmd_encode(image, out_path, shots, seed, basis, allow_large);
    if (synth->parsed())
      return cmd_synth(image, out_path, format, allow_large);
    if (enc->parsed()) return cmd_crypt(false, image, key_path, out_path);
    if (dec->parsed()) return cmd_crypt(true, image, key_path, out_path);
    if (analyze->parsed())
      return cmd_analyze(image, image_b, out_path, format);
    if (sweep->parsed())
      return cmd_noise_sweep(image, gammas, noise_mode, out_path, allow_large);
    if (keygen->parsed()) return cmd_keygen(key_n, seed, out_path);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGeneric;
  }
  return kExitGeneric;
}
