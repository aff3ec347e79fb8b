#include "neqrx/circuit.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace neqrx {

void Circuit::add(Gate g) {
  auto check = [this](std::size_t q) {
    if (q >= width_) throw std::invalid_argument("qubit index out of range");
  };
  check(g.target);
  for (const auto& c : g.controls) {
    check(c.qubit);
    if (c.qubit == g.target)
      throw std::invalid_argument("control equals target");
  }
  if (g.kind == GateKind::CX && g.controls.size() != 1)
    throw std::invalid_argument("CX requires exactly one control");
  if (g.kind == GateKind::MCX && g.controls.empty())
    throw std::invalid_argument("MCX requires at least one control");
  gates_.push_back(std::move(g));
}

std::size_t Circuit::add_ancilla() {
  const std::size_t q = width_++;
  ancillas_.insert(q);
  return q;
}

std::size_t Circuit::count_kind(GateKind k) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(),
                    [k](const Gate& g) { return g.kind == k; }));
}

std::size_t Circuit::controlled_count(std::size_t min_controls) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [&](const Gate& g) {
        return g.controls.size() >= min_controls;
      }));
}

std::size_t quantum_cost(const Circuit& c) { return c.gate_count(); }

std::size_t circuit_depth(const Circuit& c) {
  std::vector<std::size_t> level(c.width(), 0);
  std::size_t depth = 0;
  for (const Gate& g : c.gates()) {
    std::size_t l = level[g.target];
    for (const auto& ctl : g.controls) l = std::max(l, level[ctl.qubit]);
    ++l;
    level[g.target] = l;
    for (const auto& ctl : g.controls) level[ctl.qubit] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

namespace {

// Wraps `body` with X gates on every negative control, yielding an
// all-positive control list.
void with_positive_controls(const Gate& g, std::vector<Gate>& out,
                            const std::function<void(const std::vector<std::size_t>&)>& body) {
  std::vector<std::size_t> ctls;
  std::vector<std::size_t> negated;
  for (const auto& c : g.controls) {
    ctls.push_back(c.qubit);
    if (!c.positive) negated.push_back(c.qubit);
  }
  for (auto q : negated) out.push_back(Gate::x(q));
  body(ctls);
  for (auto q : negated) out.push_back(Gate::x(q));
}

Gate toffoli(std::size_t a, std::size_t b, std::size_t t) {
  return Gate::mcx({{a, true}, {b, true}}, t);
}

}  // namespace

McxLowering decompose_mcx(const Gate& gate,
                          const std::vector<std::size_t>& ancilla_pool) {
  if (gate.kind != GateKind::MCX && gate.kind != GateKind::CX)
    throw std::invalid_argument("decompose_mcx expects a controlled-X gate");
  const std::size_t c = gate.controls.size();
  if (c == 0) throw std::invalid_argument("controlled-X with zero controls");

  McxLowering result;
  with_positive_controls(gate, result.gates, [&](const std::vector<std::size_t>& ctls) {
    if (c == 1) {
      result.gates.push_back(Gate::cx(ctls[0], gate.target));
      return;
    }
    if (c == 2) {
      result.gates.push_back(toffoli(ctls[0], ctls[1], gate.target));
      return;
    }
    if (ancilla_pool.size() < c - 1)
      throw std::invalid_argument("insufficient ancillas for MCX chain");
    result.ancillas_used.assign(ancilla_pool.begin(),
                                ancilla_pool.begin() + (c - 1));
    const auto& anc = result.ancillas_used;
    std::vector<Gate> chain;
    chain.push_back(toffoli(ctls[0], ctls[1], anc[0]));
    for (std::size_t i = 2; i < c; ++i)
      chain.push_back(toffoli(ctls[i], anc[i - 2], anc[i - 1]));
    for (const auto& g : chain) result.gates.push_back(g);
    result.gates.push_back(Gate::cx(anc[c - 2], gate.target));
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      result.gates.push_back(*it);
  });
  return result;
}

namespace {

constexpr double kPi = std::numbers::pi;

void emit_h(Circuit& out, std::size_t q) {
  out.add(Gate::rz(q, kPi / 2));
  out.add(Gate::sx(q));
  out.add(Gate::rz(q, kPi / 2));
}

void emit_t(Circuit& out, std::size_t q) { out.add(Gate::rz(q, kPi / 4)); }
void emit_tdg(Circuit& out, std::size_t q) { out.add(Gate::rz(q, -kPi / 4)); }

// Standard 6-CX Toffoli template; exact up to a global phase.
void emit_toffoli(Circuit& out, std::size_t a, std::size_t b, std::size_t t) {
  emit_h(out, t);
  out.add(Gate::cx(b, t));
  emit_tdg(out, t);
  out.add(Gate::cx(a, t));
  emit_t(out, t);
  out.add(Gate::cx(b, t));
  emit_tdg(out, t);
  out.add(Gate::cx(a, t));
  emit_t(out, b);
  emit_t(out, t);
  emit_h(out, t);
  out.add(Gate::cx(a, b));
  emit_t(out, a);
  emit_tdg(out, b);
  out.add(Gate::cx(a, b));
}

void emit_lowered(Circuit& out, const std::vector<Gate>& gates) {
  for (const Gate& g : gates) {
    switch (g.kind) {
      case GateKind::X:
        out.add(g);
        break;
      case GateKind::CX:
        out.add(g);
        break;
      case GateKind::MCX:
        emit_toffoli(out, g.controls[0].qubit, g.controls[1].qubit, g.target);
        break;
      default:
        throw std::logic_error("unexpected gate in MCX lowering");
    }
  }
}

}  // namespace

Circuit transpile_to_basis(const Circuit& c) {
  // Shared ancilla pool for MCX chains; every chain restores its ancillas,
  // so one pool sized for the widest gate suffices.
  std::size_t max_controls = 0;
  for (const Gate& g : c.gates())
    if (g.kind == GateKind::MCX)
      max_controls = std::max(max_controls, g.controls.size());

  Circuit out(c.width());
  for (auto q : c.ancillas()) out.mark_ancilla(q);
  std::vector<std::size_t> pool;
  if (max_controls > 2)
    for (std::size_t i = 0; i + 1 < max_controls; ++i)
      pool.push_back(out.add_ancilla());

  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::X:
      case GateKind::SX:
      case GateKind::RZ:
        out.add(g);
        break;
      case GateKind::H:
        emit_h(out, g.target);
        break;
      case GateKind::CX:
        if (g.controls[0].positive) {
          out.add(g);
        } else {
          out.add(Gate::x(g.controls[0].qubit));
          out.add(Gate::cx(g.controls[0].qubit, g.target));
          out.add(Gate::x(g.controls[0].qubit));
        }
        break;
      case GateKind::MCX: {
        auto lowered = decompose_mcx(g, pool);
        emit_lowered(out, lowered.gates);
        break;
      }
    }
  }
  return out;
}

std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::SX: return "SX";
    case GateKind::RZ: return "RZ";
    case GateKind::CX: return "CX";
    case GateKind::MCX: return "MCX";
  }
  throw std::logic_error("unknown gate kind");
}

void dump_netlist(const Circuit& c, std::ostream& out) {
  out << "WIDTH " << c.width() << '\n';
  if (!c.ancillas().empty()) {
    out << "ANCILLA";
    for (auto q : c.ancillas()) out << ' ' << q;
    out << '\n';
  }
  out.precision(17);
  for (const Gate& g : c.gates()) {
    out << gate_kind_name(g.kind) << ' ' << g.target;
    for (const auto& ctl : g.controls)
      out << ' ' << ctl.qubit << (ctl.positive ? '+' : '-');
    if (g.kind == GateKind::RZ) out << ' ' << g.angle;
    out << '\n';
  }
}

Circuit load_netlist(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("netlist: empty input");
  std::istringstream header(line);
  std::string tag;
  std::size_t width = 0;
  header >> tag >> width;
  if (tag != "WIDTH" || width == 0)
    throw std::runtime_error("netlist: missing WIDTH header");
  Circuit c(width);

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "ANCILLA") {
      std::size_t q;
      while (ls >> q) c.mark_ancilla(q);
      continue;
    }
    std::size_t target;
    if (!(ls >> target)) throw std::runtime_error("netlist: missing target");
    Gate g;
    g.target = target;
    if (kind == "H") g.kind = GateKind::H;
    else if (kind == "X") g.kind = GateKind::X;
    else if (kind == "SX") g.kind = GateKind::SX;
    else if (kind == "RZ") g.kind = GateKind::RZ;
    else if (kind == "CX") g.kind = GateKind::CX;
    else if (kind == "MCX") g.kind = GateKind::MCX;
    else throw std::runtime_error("netlist: unknown gate '" + kind + "'");

    std::string tok;
    while (ls >> tok) {
      if (g.kind == GateKind::RZ &&
          (tok.back() != '+' && tok.back() != '-')) {
        g.angle = std::stod(tok);
        continue;
      }
      if (tok.back() != '+' && tok.back() != '-')
        throw std::runtime_error("netlist: control missing polarity");
      g.controls.push_back(
          {std::stoul(tok.substr(0, tok.size() - 1)), tok.back() == '+'});
    }
    c.add(std::move(g));
  }
  return c;
}

}  // namespace neqrx
