#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "helpers.hpp"
#include "neqrx/circuit.hpp"
#include "neqrx/neqr.hpp"
#include "neqrx/sim.hpp"

using namespace neqrx;
using namespace neqrx::test;

namespace {

// Runs both circuits on every basis input of the original register width and
// checks agreement up to one global phase shared across the comparison of a
// single input. Extra (ancilla) qubits start and must end in |0>.
void check_equivalent_on_basis(const Circuit& a, const Circuit& b,
                               std::size_t logical_width) {
  REQUIRE(a.width() >= logical_width);
  REQUIRE(b.width() >= logical_width);
  const std::size_t dim = std::size_t{1} << logical_width;
  for (std::size_t input = 0; input < dim; ++input) {
    StateVector ina(a.width());
    ina[0] = 0.0;
    ina[input] = 1.0;
    StateVector inb(b.width());
    inb[0] = 0.0;
    inb[input] = 1.0;
    auto outa = run_statevector(a, std::move(ina));
    auto outb = run_statevector(b, std::move(inb));
    // Fold both outputs down to the logical register; ancilla bits must be 0.
    std::vector<Amplitude> va(dim, 0.0), vb(dim, 0.0);
    for (std::size_t k = 0; k < outa.dim(); ++k)
      if (std::abs(outa[k]) > 1e-12) {
        REQUIRE((k >> logical_width) == 0);
        va[k] = outa[k];
      }
    for (std::size_t k = 0; k < outb.dim(); ++k)
      if (std::abs(outb[k]) > 1e-12) {
        REQUIRE((k >> logical_width) == 0);
        vb[k] = outb[k];
      }
    CHECK(states_equal_up_to_phase(StateVector(logical_width, va),
                                   StateVector(logical_width, vb)));
  }
}

Circuit single_gate_circuit(std::size_t width, Gate g) {
  Circuit c(width);
  c.add(std::move(g));
  return c;
}

}  // namespace

TEST_CASE("decompose_mcx gate counts") {
  // 1 control -> plain CX.
  auto low = decompose_mcx(Gate::mcx({{0, true}}, 1), {});
  CHECK(low.gates.size() == 1);
  CHECK(low.gates[0].kind == GateKind::CX);

  // negative single control -> X conjugation.
  low = decompose_mcx(Gate::mcx({{0, false}}, 1), {});
  CHECK(low.gates.size() == 3);

  // 2 controls -> one Toffoli.
  low = decompose_mcx(Gate::mcx({{0, true}, {1, true}}, 2), {});
  CHECK(low.gates.size() == 1);
  CHECK(low.gates[0].controls.size() == 2);

  // 4 controls -> 6 Toffoli + 1 CX on 3 ancillas.
  low = decompose_mcx(
      Gate::mcx({{0, true}, {1, true}, {2, true}, {3, true}}, 4), {5, 6, 7});
  std::size_t toffoli = 0, cx = 0;
  for (const auto& g : low.gates) {
    if (g.kind == GateKind::MCX) ++toffoli;
    if (g.kind == GateKind::CX) ++cx;
  }
  CHECK(toffoli == 6);
  CHECK(cx == 1);
  CHECK(low.ancillas_used.size() == 3);

  CHECK_THROWS(decompose_mcx(Gate::x(0), {}));
}

TEST_CASE("decompose_mcx Toffoli count is 2(c-1) for c >= 3") {
  for (std::size_t c = 3; c <= 6; ++c) {
    std::vector<Control> ctls;
    for (std::size_t q = 0; q < c; ++q) ctls.push_back({q, true});
    std::vector<std::size_t> pool;
    for (std::size_t q = 0; q + 1 < c; ++q) pool.push_back(c + 1 + q);
    const auto low = decompose_mcx(Gate::mcx(ctls, c), pool);
    std::size_t toffoli = 0;
    for (const auto& g : low.gates)
      if (g.kind == GateKind::MCX) ++toffoli;
    CHECK(toffoli == 2 * (c - 1));
  }
}

TEST_CASE("decompose_mcx is exact on every basis state") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t c = 1 + std::size_t(rng() % 4);
    std::vector<Control> ctls;
    for (std::size_t q = 0; q < c; ++q) ctls.push_back({q, (rng() & 1) != 0});
    const std::size_t target = c;
    const std::size_t logical = c + 1;

    Circuit reference(logical);
    reference.add(Gate::mcx(ctls, target));

    Circuit lowered(logical);
    std::vector<std::size_t> pool;
    for (std::size_t q = 0; q + 1 < c; ++q) pool.push_back(lowered.add_ancilla());
    for (const auto& g : decompose_mcx(Gate::mcx(ctls, target), pool).gates)
      lowered.add(g);
    check_equivalent_on_basis(reference, lowered, logical);
  }
}

TEST_CASE("transpile_to_basis leaves CX unchanged and expands Toffoli to 6 CX") {
  const auto cx_only =
      transpile_to_basis(single_gate_circuit(2, Gate::cx(0, 1)));
  CHECK(quantum_cost(cx_only) == 1);

  const auto tof = single_gate_circuit(3, Gate::mcx({{0, true}, {1, true}}, 2));
  const auto basis = transpile_to_basis(tof);
  CHECK(basis.count_kind(GateKind::CX) == 6);
  CHECK(basis.count_kind(GateKind::MCX) == 0);
  CHECK(basis.count_kind(GateKind::H) == 0);
  check_equivalent_on_basis(tof, basis, 3);
}

TEST_CASE("transpile_to_basis output uses only the basis set") {
  const auto naive = build_naive_neqr_circuit(sample_image());
  const auto basis = transpile_to_basis(naive);
  for (const auto& g : basis.gates()) {
    const bool ok = g.kind == GateKind::X || g.kind == GateKind::SX ||
                    g.kind == GateKind::RZ || g.kind == GateKind::CX;
    CHECK(ok);
    if (g.kind == GateKind::CX) CHECK(g.controls[0].positive);
  }
  // Still produces the NEQR state up to global phase.
  const auto expect = neqr_state(sample_image());
  auto out = run_statevector(basis);
  std::vector<Amplitude> folded(expect.dim(), 0.0);
  for (std::size_t k = 0; k < out.dim(); ++k)
    if (std::abs(out[k]) > 1e-12) {
      REQUIRE((k >> expect.width()) == 0);
      folded[k] = out[k];
    }
  CHECK(states_equal_up_to_phase(expect, StateVector(expect.width(), folded),
                                 1e-9));
}

TEST_CASE("H expansion is equivalent up to global phase") {
  const auto h = single_gate_circuit(1, Gate::h(0));
  check_equivalent_on_basis(h, transpile_to_basis(h), 1);
}

TEST_CASE("negative controls transpile correctly") {
  const auto gate = single_gate_circuit(
      3, Gate::mcx({{0, false}, {1, true}}, 2));
  check_equivalent_on_basis(gate, transpile_to_basis(gate), 3);
}

TEST_CASE("quantum_cost and circuit_depth basics") {
  Circuit empty(2);
  CHECK(quantum_cost(empty) == 0);
  CHECK(circuit_depth(empty) == 0);

  Circuit parallel(2);
  parallel.add(Gate::h(0));
  parallel.add(Gate::h(1));
  CHECK(circuit_depth(parallel) == 1);

  Circuit chain(3);
  chain.add(Gate::cx(0, 1));
  chain.add(Gate::cx(1, 2));
  CHECK(circuit_depth(chain) == 2);
  CHECK(quantum_cost(chain) == 2);

  CHECK(circuit_depth(single_gate_circuit(2, Gate::cx(0, 1))) == 1);
}

TEST_CASE("depth never exceeds gate count") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c(5);
    const std::size_t count = rng() % 30;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t t = rng() % 5;
      std::size_t ctl = rng() % 5;
      if (ctl == t) ctl = (ctl + 1) % 5;
      if (rng() & 1)
        c.add(Gate::h(t));
      else
        c.add(Gate::cx(ctl, t));
    }
    CHECK(circuit_depth(c) <= quantum_cost(c));
  }
}

TEST_CASE("transpiled circuits restore ancillas to zero on basis inputs") {
  Circuit c(5);
  c.add(Gate::mcx({{0, true}, {1, false}, {2, true}, {3, true}}, 4));
  const auto basis = transpile_to_basis(c);
  for (std::size_t input = 0; input < 32; ++input) {
    StateVector in(basis.width());
    in[0] = 0.0;
    in[input] = 1.0;
    const auto out = run_statevector(basis, std::move(in));
    for (std::size_t k = 0; k < out.dim(); ++k)
      if (std::abs(out[k]) > 1e-9) CHECK((k >> 5) == 0);
  }
}

TEST_CASE("netlist round trip") {
  Circuit c(4);
  c.add(Gate::h(0));
  c.add(Gate::rz(1, -0.78539816339744831));
  c.add(Gate::sx(2));
  c.add(Gate::cx(0, 3));
  c.add(Gate::mcx({{0, true}, {1, false}}, 2));
  c.mark_ancilla(3);

  std::stringstream buf;
  dump_netlist(c, buf);
  const auto loaded = load_netlist(buf);
  CHECK(loaded.width() == c.width());
  CHECK(loaded.gates() == c.gates());
  CHECK(loaded.ancillas() == c.ancillas());
}

TEST_CASE("circuit rejects malformed gates") {
  Circuit c(2);
  CHECK_THROWS(c.add(Gate::cx(0, 0)));
  CHECK_THROWS(c.add(Gate::h(5)));
  CHECK_THROWS(c.add(Gate::mcx({}, 1)));
}
