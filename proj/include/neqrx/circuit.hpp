#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace neqrx {

enum class GateKind { H, X, SX, RZ, CX, MCX };

struct Control {
  std::size_t qubit;
  bool positive;  // false = trigger on |0>

  auto operator<=>(const Control&) const = default;
};

struct Gate {
  GateKind kind;
  std::size_t target;
  std::vector<Control> controls;  // CX: exactly one; MCX: one or more
  double angle = 0.0;             // RZ only

  static Gate h(std::size_t t) { return {GateKind::H, t, {}, 0.0}; }
  static Gate x(std::size_t t) { return {GateKind::X, t, {}, 0.0}; }
  static Gate sx(std::size_t t) { return {GateKind::SX, t, {}, 0.0}; }
  static Gate rz(std::size_t t, double a) { return {GateKind::RZ, t, {}, a}; }
  static Gate cx(std::size_t c, std::size_t t, bool positive = true) {
    return {GateKind::CX, t, {{c, positive}}, 0.0};
  }
  static Gate mcx(std::vector<Control> cs, std::size_t t) {
    return {GateKind::MCX, t, std::move(cs), 0.0};
  }

  bool operator==(const Gate&) const = default;
};

class Circuit {
public:
  explicit Circuit(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::set<std::size_t>& ancillas() const { return ancillas_; }

  void add(Gate g);
  // Allocates a fresh qubit marked as ancilla, growing the width.
  std::size_t add_ancilla();
  void mark_ancilla(std::size_t q) { ancillas_.insert(q); }

  std::size_t gate_count() const { return gates_.size(); }
  std::size_t count_kind(GateKind k) const;
  // Gates with at least `min_controls` controls.
  std::size_t controlled_count(std::size_t min_controls = 1) const;

private:
  std::size_t width_;
  std::vector<Gate> gates_;
  std::set<std::size_t> ancillas_;
};

// Number of gates in the list (callers wanting basis cost transpile first).
std::size_t quantum_cost(const Circuit& c);

// Greedy as-soon-as-possible layering; gates on disjoint qubits share a step.
std::size_t circuit_depth(const Circuit& c);

// Lowers one MCX to {X, CX, Toffoli} with a clean ancilla chain.
// c controls -> 2(c-1) Toffolis + 1 CX, using c-1 ancillas appended to the
// circuit the gates are destined for. `alloc_ancilla` hands out clean qubits.
struct McxLowering {
  std::vector<Gate> gates;
  std::vector<std::size_t> ancillas_used;
};
McxLowering decompose_mcx(const Gate& gate,
                          const std::vector<std::size_t>& ancilla_pool);

// Rewrites the whole circuit into the {X, SX, RZ, CX} basis. MCX gates are
// first lowered via decompose_mcx (ancillas shared across gates), Toffolis
// expanded with the standard 6-CX template, H as RZ.SX.RZ up to global phase.
Circuit transpile_to_basis(const Circuit& c);

// Line-oriented netlist: `WIDTH n` / `ANCILLA i j ...` header, then one gate
// per line: `GATE target [controls with +/- suffix] [angle]`.
void dump_netlist(const Circuit& c, std::ostream& out);
Circuit load_netlist(std::istream& in);

std::string gate_kind_name(GateKind k);

}  // namespace neqrx
