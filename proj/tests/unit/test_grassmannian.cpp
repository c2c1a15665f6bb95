#include "toral/grassmannian.hpp"

#include <doctest.h>

#include <set>

using namespace toral;

namespace {

std::shared_ptr<const FiniteGroup> cyclic(int n) { return std::make_shared<FiniteGroup>(FiniteGroup::cyclic(n)); }

IntegralRep swap_rep() { return regular_rep(cyclic(2)); }

BigInt sigma(long long n) {
  BigInt s = 0;
  for (long long d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

}  // namespace

TEST_CASE("rank-two census counts are divisor sums") {
  auto census = enumerate_sublattices(IntegralRep::trivial(cyclic(1), 2), 50, false);
  for (long long n = 1; n <= 50; ++n) CHECK(BigInt(census.counts[static_cast<size_t>(n)]) == sigma(n));
  std::vector<size_t> first{census.counts.begin() + 1, census.counts.begin() + 7};
  CHECK(first == std::vector<size_t>{1, 3, 4, 7, 6, 12});
  CHECK(BigInt(census.entries.size()) == sublattice_count(2, 50));
  std::set<Lattice> distinct;
  for (const auto& e : census.entries) {
    distinct.insert(e.lattice);
    CHECK(e.lattice.index() == e.index);
  }
  CHECK(distinct.size() == census.entries.size());
}

TEST_CASE("census brute force in rank three") {
  auto census = enumerate_sublattices(IntegralRep::trivial(cyclic(1), 3), 8, false);
  // Brute force: sublattices of index n contain nZ³, so they are subgroups of (Z/n)³ of index n.
  for (long long n = 1; n <= 8; ++n) {
    std::set<Lattice> brute;
    for (const auto& l : intermediate_lattices(Lattice::scaled_full(3, n), Lattice::full(3)))
      if (l.index() == n) brute.insert(l);
    std::set<Lattice> listed;
    for (const auto& e : census.entries)
      if (e.index == n) listed.insert(e.lattice);
    CHECK(listed == brute);
  }
}

TEST_CASE("index one and the swap-invariant index-two lattice") {
  auto rep = swap_rep();
  auto all = enumerate_sublattices(rep, 1, false);
  REQUIRE(all.entries.size() == 1);
  CHECK(all.entries[0].lattice == Lattice::full(2));
  auto inv = enumerate_sublattices(rep, 2, true);
  REQUIRE(inv.counts[2] == 1);
  IntMatrix g(2, 2);
  g << 1, 2, 1, 0;
  CHECK(inv.entries.back().lattice == Lattice::from_generators(g));
}

TEST_CASE("census caps") {
  CHECK_THROWS_AS(enumerate_sublattices(swap_rep(), 10001, true), DimensionError);
  CHECK_THROWS_AS(enumerate_sublattices(IntegralRep::trivial(cyclic(1), 5), 2, false), DimensionError);
  CHECK_THROWS_AS(enumerate_sublattices(IntegralRep::trivial(cyclic(1), 4), 10000, false), DimensionError);
  CHECK_THROWS_AS(enumerate_sublattices(swap_rep(), 0, true), DimensionError);
}

TEST_CASE("components of the swap module") {
  auto census = enumerate_sublattices(swap_rep(), 100, true);
  auto report = classify_components(census);
  CHECK(report.undecided.empty());
  REQUIRE(report.components.size() == 2);
  int constrained = 0;
  for (const auto& c : report.components) {
    CHECK(c.parameter_count == 2);
    if (!c.congruences.empty()) {
      ++constrained;
      REQUIRE(c.congruences.size() == 1);
      CHECK(c.congruences[0].modulus == 2);
    }
  }
  CHECK(constrained == 1);
  // Λ itself is the non-split type.
  CHECK(census.entries[0].index == 1);
  CHECK(report.components[static_cast<size_t>(census.entries[0].component)].congruences.size() == 1);
  std::map<Lattice, int> component;
  for (const auto& e : census.entries) component[e.lattice] = e.component;
  for (const auto& e : census.entries) {
    CHECK(e.component >= 0);
    for (int m = 2; m <= 4; ++m) {
      auto scaled = scale(e.lattice, m);
      if (scaled.index() <= 100) CHECK(component.at(scaled) == e.component);
    }
  }
}

TEST_CASE("components for trivial action in rank one") {
  auto census = enumerate_sublattices(IntegralRep::trivial(cyclic(2), 1), 30, true);
  CHECK(census.entries.size() == 30);
  auto report = classify_components(census);
  REQUIRE(report.components.size() == 1);
  CHECK(report.components[0].parameter_count == 1);
  CHECK(report.components[0].members.size() == 30);
}

TEST_CASE("isomorphism test distinguishes the two swap types") {
  auto rep = swap_rep();
  auto d = decompose(rep);
  IntMatrix f(2, 2), p(2, 2);
  f << 3, 1, 3, -1;  // ⟨(3,3), (1,-1)⟩
  p << 1, 3, 1, -3;  // ⟨(1,1), (3,-3)⟩ ≅ the split type as well
  auto split = Lattice::from_generators(f), other = Lattice::from_generators(p);
  CHECK(zw_isomorphic(rep, d, split, other) == IsoResult::Isomorphic);
  CHECK(zw_isomorphic(rep, d, Lattice::full(2), split) == IsoResult::NotIsomorphic);
  CHECK(zw_isomorphic(rep, d, Lattice::full(2), scale(Lattice::full(2), 5)) == IsoResult::Isomorphic);
}

TEST_CASE("delta split") {
  auto rep = swap_rep();
  auto d = decompose(rep);
  const auto& l1 = d.pieces[0].lattice;
  const auto& l2 = d.pieces[1].lattice;
  auto g1 = scale(l1, 3), g2 = scale(l2, 4);
  auto [a, b] = delta_split(lattice_sum(g1, g2), l1, l2);
  CHECK(a == g1);
  CHECK(b == g2);
  IntMatrix e(2, 2);
  e << 1, 2, 1, 0;
  auto gamma = Lattice::from_generators(e);
  auto [x, y] = delta_split(gamma, l1, l2);
  auto inner = lattice_sum(x, y);
  CHECK(gamma.contains(inner));
  CHECK(inner.rank() == 2);
  CHECK(quotient_invariants(inner, gamma).is_finite());
}

TEST_CASE("isotypic product map over censuses") {
  for (int n = 1; n <= 50; n += 7) {
    auto census = enumerate_sublattices(swap_rep(), n, true);
    auto report = isotypic_product_map(census, decompose(census.rep));
    CHECK(report.lands_in_product);
    CHECK(report.finite_index);
    CHECK(report.surjective);
    CHECK(report.fibre_bound == 2);
    CHECK(report.fibres_bounded());
  }
  auto c3 = cyclic(3);
  IntMatrix rot(2, 2);
  rot << 0, -1, 1, -1;
  auto rep = direct_sum(IntegralRep::trivial(c3, 1), IntegralRep::from_generators(c3, 2, {rot}));
  auto census = enumerate_sublattices(rep, 50, true);
  auto report = isotypic_product_map(census, decompose(rep));
  CHECK(report.lands_in_product);
  CHECK(report.surjective);
  CHECK(report.tuples_checked > 0);
  // Here Λ₀ = Λ₁ ⊕ Λ_f, yet lattices glued along the W-coinvariants Λ_f / (1 - w)Λ_f ≅ Z/3 share a δ-image.
  CHECK(report.fibre_bound == 1);
  CHECK(report.max_fibre == 3);
}
