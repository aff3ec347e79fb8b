#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "neqrx/neqr.hpp"
#include "neqrx/sim.hpp"
#include "neqrx/synth.hpp"

using namespace neqrx;
using namespace neqrx::test;

namespace {

std::set<std::uint32_t> cube_minterms(const Cube& c, std::size_t num_vars) {
  std::set<std::uint32_t> out;
  const std::uint32_t full = (1u << num_vars) - 1;
  for (std::uint32_t m = 0; m <= full; ++m)
    if (c.contains(m)) out.insert(m);
  return out;
}

// Independent oracle: smallest disjoint cover by exhaustive enumeration over
// cover sizes (practical only for tiny ON-sets).
std::size_t exhaustive_min_cover_size(const std::vector<std::uint32_t>& on_set,
                                      std::size_t num_vars) {
  std::vector<Cube> all;
  const std::uint32_t full = (1u << num_vars) - 1;
  for (std::uint32_t care = 0; care <= full; ++care) {
    for (std::uint32_t value = care;; value = (value - 1) & care) {
      all.push_back({care, value});
      if (value == 0) break;
    }
  }
  std::set<std::uint32_t> target(on_set.begin(), on_set.end());
  for (std::size_t size = 1; size <= target.size(); ++size) {
    std::vector<std::size_t> pick(size, 0);
    std::function<bool(std::size_t, std::size_t)> rec =
        [&](std::size_t depth, std::size_t from) -> bool {
      if (depth == size) {
        std::set<std::uint32_t> covered;
        for (std::size_t i = 0; i < size; ++i) {
          const auto ms = cube_minterms(all[pick[i]], num_vars);
          for (auto m : ms)
            if (!covered.insert(m).second) return false;  // overlap
        }
        return covered == target;
      }
      for (std::size_t i = from; i < all.size(); ++i) {
        pick[depth] = i;
        if (rec(depth + 1, i + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return size;
  }
  return target.size();
}

void check_cover(const Cover& cover, const std::vector<std::uint32_t>& on_set,
                 std::size_t num_vars) {
  std::set<std::uint32_t> covered;
  for (const Cube& c : cover)
    for (auto m : cube_minterms(c, num_vars))
      CHECK(covered.insert(m).second);  // pairwise disjoint
  CHECK(covered == std::set<std::uint32_t>(on_set.begin(), on_set.end()));
}

}  // namespace

TEST_CASE("minimize_cover worked examples") {
  // Tautology over 2 vars.
  auto cover = minimize_cover({0, 1, 2, 3}, 2);
  REQUIRE(cover.size() == 1);
  CHECK(cover[0].to_string(2) == "--");

  // Bit-plane 7 of the test image: ON {00, 10} merges to "-0".
  cover = minimize_cover({0, 2}, 2);
  REQUIRE(cover.size() == 1);
  CHECK(cover[0].to_string(2) == "-0");

  // Bit-plane 2: ON {00, 11} cannot merge.
  cover = minimize_cover({0, 3}, 2);
  CHECK(cover.size() == 2);
  check_cover(cover, {0, 3}, 2);

  CHECK(minimize_cover({}, 2).empty());
}

TEST_CASE("minimize_cover is exact for small problems") {
  std::mt19937_64 rng(61);
  for (std::size_t num_vars = 2; num_vars <= 4; ++num_vars) {
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<std::uint32_t> on_set;
      const std::uint32_t full = (1u << num_vars) - 1;
      for (std::uint32_t m = 0; m <= full; ++m)
        if (rng() & 1) on_set.push_back(m);
      if (on_set.empty() || on_set.size() > 6) continue;  // keep oracle cheap
      const auto cover = minimize_cover(on_set, num_vars);
      check_cover(cover, on_set, num_vars);
      CHECK(cover.size() == exhaustive_min_cover_size(on_set, num_vars));
    }
  }
}

TEST_CASE("minimize_cover covers are disjoint and complete") {
  std::mt19937_64 rng(67);
  for (std::size_t num_vars = 2; num_vars <= 6; ++num_vars) {
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<std::uint32_t> on_set;
      const std::uint32_t full = (1u << num_vars) - 1;
      for (std::uint32_t m = 0; m <= full; ++m)
        if (rng() % 3 == 0) on_set.push_back(m);
      const auto cover = minimize_cover(on_set, num_vars);
      check_cover(cover, on_set, num_vars);
      CHECK(cover.size() <= on_set.size());
    }
  }
}

TEST_CASE("PLA dump format") {
  std::stringstream out;
  dump_pla(minimize_cover({0, 2}, 2), 2, out);
  CHECK(out.str() == ".i 2\n.o 1\n.p 1\n-0 1\n.e\n");
}

TEST_CASE("minimized encoder matches the NEQR state") {
  std::mt19937_64 rng(71);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto img = random_image(n, rng);
    const auto minimized = synthesize_minimized_encoder(img);
    CHECK(max_amplitude_diff(run_statevector(minimized), neqr_state(img)) <
          1e-12);
    CHECK(minimized.controlled_count() <=
          build_naive_neqr_circuit(img).controlled_count());
  }
}

TEST_CASE("minimized encoder on the worked example") {
  const auto minimized = synthesize_minimized_encoder(sample_image());
  CHECK(max_amplitude_diff(run_statevector(minimized),
                           neqr_state(sample_image())) < 1e-12);
  // 14 naive controlled gates shrink; 8 of the survivors keep both controls
  // (8 two-control gates; 1-control gates counted separately).
  CHECK(minimized.controlled_count() < 14);
  CHECK(minimized.controlled_count(2) == 8);
}

TEST_CASE("all-zero and all-255 images") {
  CHECK(synthesize_minimized_encoder(GrayImage::filled(1, 0)).gate_count() ==
        2);

  const auto bright = synthesize_minimized_encoder(GrayImage::filled(1, 255));
  CHECK(bright.count_kind(GateKind::X) == 8);  // tautology cubes
  CHECK(bright.controlled_count() == 0);
  CHECK(max_amplitude_diff(run_statevector(bright),
                           neqr_state(GrayImage::filled(1, 255))) < 1e-12);
}

TEST_CASE("factor_shared_controls rewrites large groups through an ancilla") {
  // Eight Toffolis with the pattern Y=0, X=0 (pixel value 255 at the origin).
  Circuit c(10);
  for (std::size_t bit = 0; bit < 8; ++bit)
    c.add(Gate::mcx({{0, false}, {1, false}}, 2 + bit));
  const auto factored = factor_shared_controls(c);
  CHECK(factored.count_kind(GateKind::MCX) == 2);
  CHECK(factored.count_kind(GateKind::CX) == 8);
  CHECK(factored.width() == 11);
  CHECK(factored.ancillas().size() == 1);
}

TEST_CASE("groups below the threshold stay unchanged") {
  Circuit c(4);
  c.add(Gate::mcx({{0, true}, {1, true}}, 2));
  const auto factored = factor_shared_controls(c);
  CHECK(factored.gates() == c.gates());

  // Two occurrences: still below g >= 3.
  Circuit c2(5);
  c2.add(Gate::mcx({{0, true}, {1, true}}, 2));
  c2.add(Gate::mcx({{0, true}, {1, true}}, 3));
  CHECK(factor_shared_controls(c2).count_kind(GateKind::MCX) == 2);
}

TEST_CASE("factoring preserves the simulated state and reduces gate count") {
  std::mt19937_64 rng(73);
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto img = random_image(n, rng);
    const auto minimized = synthesize_minimized_encoder(img);
    const auto factored = factor_shared_controls(minimized);
    CHECK(factored.controlled_count(2) <= minimized.controlled_count(2));

    const auto out = run_statevector(factored);
    const auto expect = run_statevector(minimized);
    // Non-ancilla register must match; ancilla must be |0>.
    for (std::size_t k = 0; k < out.dim(); ++k) {
      const std::size_t low = k & (expect.dim() - 1);
      const std::size_t high = k >> expect.width();
      if (high == 0)
        CHECK(out[k] == expect[low]);
      else
        CHECK(std::abs(out[k]) == 0.0);
    }
  }
}

TEST_CASE("factoring is involution-safe") {
  const auto minimized = synthesize_minimized_encoder(sample_image());
  const auto once = factor_shared_controls(minimized);
  const auto twice = factor_shared_controls(once);
  CHECK(once.gates() == twice.gates());
  CHECK(once.width() == twice.width());
}

TEST_CASE("factoring the worked example strictly reduces 2-control gates") {
  const auto minimized = synthesize_minimized_encoder(sample_image());
  const auto factored = factor_shared_controls(minimized);
  CHECK(factored.controlled_count(2) < minimized.controlled_count(2));
  const auto out = run_statevector(factored);
  const auto expect = run_statevector(minimized);
  for (std::size_t k = 0; k < expect.dim(); ++k) CHECK(out[k] == expect[k]);
}
