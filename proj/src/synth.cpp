#include "neqrx/synth.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace neqrx {

std::size_t Cube::num_vars_set(std::size_t) const {
  return static_cast<std::size_t>(std::popcount(care));
}

std::string Cube::to_string(std::size_t num_vars) const {
  std::string s(num_vars, '-');
  for (std::size_t b = 0; b < num_vars; ++b) {
    if (care & (1u << b)) s[num_vars - 1 - b] = (value >> b) & 1 ? '1' : '0';
  }
  return s;
}

namespace {

// All cubes fully contained in the ON-set, widest first; the ordering is the
// deterministic tie-break for the exact search.
std::vector<Cube> candidate_cubes(const std::vector<bool>& on,
                                  std::size_t num_vars) {
  const std::uint32_t full = (1u << num_vars) - 1;
  std::vector<Cube> cubes;
  for (std::uint32_t care = 0; care <= full; ++care) {
    const std::uint32_t dash = full & ~care;
    std::uint32_t v = 0;
    while (true) {  // v runs over subsets of `care`
      bool inside = true;
      std::uint32_t m = v;
      while (true) {  // m runs over completions of the dash bits
        if (!on[m]) {
          inside = false;
          break;
        }
        if (m == (v | dash)) break;
        m = (((m | care) + 1) & ~care) | v;
      }
      if (inside) cubes.push_back({care, v});
      if (v == care) break;
      v = ((v | dash) + 1) & care;
    }
  }
  std::sort(cubes.begin(), cubes.end(), [](const Cube& a, const Cube& b) {
    const int pa = std::popcount(a.care), pb = std::popcount(b.care);
    if (pa != pb) return pa < pb;  // fewer literals = bigger cube first
    if (a.value != b.value) return a.value < b.value;
    return a.care < b.care;
  });
  return cubes;
}

struct ExactSearch {
  const std::vector<Cube>& cubes;
  const std::vector<bool>& on;
  std::size_t max_cube_size;
  std::uint32_t full_mask;
  Cover best;
  Cover current;
  std::size_t nodes = 0;
  static constexpr std::size_t kNodeBudget = 4'000'000;

  void run(std::vector<bool>& covered, std::size_t remaining) {
    if (++nodes > kNodeBudget) return;
    if (remaining == 0) {
      if (current.size() < best.size()) best = current;
      return;
    }
    const std::size_t lower = (remaining + max_cube_size - 1) / max_cube_size;
    if (current.size() + lower >= best.size()) return;

    std::uint32_t pivot = 0;
    while (covered[pivot] || !on[pivot]) ++pivot;

    for (const Cube& c : cubes) {
      if (!c.contains(pivot)) continue;
      bool clash = false;
      std::vector<std::uint32_t> added;
      const std::uint32_t last = c.value | (full_mask & ~c.care);
      std::uint32_t m = c.value;
      while (true) {
        if (covered[m]) {
          clash = true;
          break;
        }
        added.push_back(m);
        if (m == last) break;
        m = (((m | c.care) + 1) & ~c.care) | c.value;
      }
      if (clash) continue;
      for (auto x : added) covered[x] = true;
      current.push_back(c);
      run(covered, remaining - added.size());
      current.pop_back();
      for (auto x : added) covered[x] = false;
    }
  }
};

// Singleton cubes merged pairwise while adjacent; the cover stays disjoint
// because a merge covers exactly the union of the two cubes.
Cover heuristic_merge(std::vector<std::uint32_t> minterms,
                      std::size_t num_vars) {
  const std::uint32_t full = (1u << num_vars) - 1;
  Cover cover;
  for (auto m : minterms) cover.push_back({full, m});
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cover.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < cover.size(); ++j) {
        if (cover[i].care != cover[j].care) continue;
        const std::uint32_t diff = cover[i].value ^ cover[j].value;
        if (std::popcount(diff) != 1) continue;
        cover[i] = {cover[i].care & ~diff, cover[i].value & ~diff};
        cover.erase(cover.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }
  return cover;
}

}  // namespace

Cover minimize_cover(const std::vector<std::uint32_t>& on_set,
                     std::size_t num_vars) {
  if (num_vars == 0 || num_vars > 31)
    throw std::invalid_argument("num_vars out of range");
  const std::uint32_t full = (1u << num_vars) - 1;
  for (auto m : on_set)
    if (m > full) throw std::invalid_argument("minterm out of range");
  if (on_set.empty()) return {};

  std::set<std::uint32_t> unique(on_set.begin(), on_set.end());
  std::vector<std::uint32_t> minterms(unique.begin(), unique.end());
  if (num_vars > 8) return heuristic_merge(std::move(minterms), num_vars);

  std::vector<bool> on(std::size_t{1} << num_vars, false);
  for (auto m : minterms) on[m] = true;

  const auto cubes = candidate_cubes(on, num_vars);
  std::size_t max_size = 1;
  for (const auto& c : cubes)
    max_size = std::max(
        max_size, std::size_t{1} << (num_vars - std::popcount(c.care)));

  ExactSearch search{cubes, on,    max_size, full,
                     heuristic_merge(minterms, num_vars), {}};
  std::vector<bool> covered(std::size_t{1} << num_vars, false);
  search.run(covered, minterms.size());
  return search.best;
}

void dump_pla(const Cover& cover, std::size_t num_vars, std::ostream& out) {
  out << ".i " << num_vars << "\n.o 1\n.p " << cover.size() << '\n';
  for (const Cube& c : cover) out << c.to_string(num_vars) << " 1\n";
  out << ".e\n";
}

Circuit synthesize_minimized_encoder(const GrayImage& image) {
  const std::size_t n = image.order();
  const std::size_t num_vars = 2 * n;
  Circuit c(2 * n + 8);
  for (std::size_t q = 0; q < 2 * n; ++q) c.add(Gate::h(q));

  for (std::size_t bit = 0; bit < 8; ++bit) {
    std::vector<std::uint32_t> on_set;
    for (std::size_t eta = 0; eta < image.pixel_count(); ++eta)
      if ((image[eta] >> bit) & 1) on_set.push_back(std::uint32_t(eta));
    const std::size_t target = 2 * n + bit;
    for (const Cube& cube : minimize_cover(on_set, num_vars)) {
      if (cube.care == 0) {
        c.add(Gate::x(target));
        continue;
      }
      std::vector<Control> ctls;
      for (std::size_t b = 0; b < num_vars; ++b)
        if (cube.care & (1u << b))
          ctls.push_back({b, ((cube.value >> b) & 1) != 0});
      if (ctls.size() == 1)
        c.add({GateKind::CX, target, std::move(ctls), 0.0});
      else
        c.add(Gate::mcx(std::move(ctls), target));
    }
  }
  return c;
}

namespace {

bool is_x_type(const Gate& g) {
  return g.kind == GateKind::X || g.kind == GateKind::CX ||
         g.kind == GateKind::MCX;
}

std::vector<Control> sorted_controls(const Gate& g) {
  auto ctls = g.controls;
  std::sort(ctls.begin(), ctls.end(), [](const Control& a, const Control& b) {
    return a.qubit < b.qubit;
  });
  return ctls;
}

}  // namespace

Circuit factor_shared_controls(const Circuit& circuit) {
  const auto& gates = circuit.gates();
  Circuit out(circuit.width());
  for (auto q : circuit.ancillas()) out.mark_ancilla(q);

  // One reusable factoring ancilla; every group uncomputes it back to |0>.
  std::size_t ancilla = 0;
  bool ancilla_allocated = false;
  auto get_ancilla = [&]() {
    if (!ancilla_allocated) {
      ancilla = out.add_ancilla();
      ancilla_allocated = true;
    }
    return ancilla;
  };

  std::size_t i = 0;
  while (i < gates.size()) {
    if (!is_x_type(gates[i])) {
      out.add(gates[i]);
      ++i;
      continue;
    }
    // Maximal run of X-type gates: they may be grouped only if targets and
    // controls never overlap across the run.
    std::size_t j = i;
    while (j < gates.size() && is_x_type(gates[j])) ++j;

    std::set<std::size_t> run_targets, run_controls;
    for (std::size_t k = i; k < j; ++k) {
      run_targets.insert(gates[k].target);
      for (const auto& ctl : gates[k].controls)
        run_controls.insert(ctl.qubit);
    }
    bool safe = true;
    for (auto t : run_targets)
      if (run_controls.count(t)) safe = false;

    std::map<std::vector<Control>, std::size_t> group_size;
    if (safe) {
      for (std::size_t k = i; k < j; ++k)
        if (gates[k].controls.size() >= 2)
          ++group_size[sorted_controls(gates[k])];
    }

    std::set<std::vector<Control>> emitted;
    for (std::size_t k = i; k < j; ++k) {
      const Gate& g = gates[k];
      if (!safe || g.controls.size() < 2) {
        out.add(g);
        continue;
      }
      const auto key = sorted_controls(g);
      if (group_size[key] < 3) {
        out.add(g);
        continue;
      }
      if (emitted.count(key)) continue;
      emitted.insert(key);
      const std::size_t a = get_ancilla();
      out.add(Gate::mcx(key, a));
      for (std::size_t k2 = k; k2 < j; ++k2)
        if (gates[k2].controls.size() >= 2 && sorted_controls(gates[k2]) == key)
          out.add(Gate::cx(a, gates[k2].target));
      out.add(Gate::mcx(key, a));
    }
    i = j;
  }
  return out;
}

}  // namespace neqrx
