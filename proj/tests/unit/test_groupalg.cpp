#include <doctest.h>

#include "toral/groupalg.hpp"

using namespace toral;

namespace {
std::shared_ptr<const FiniteGroup> c(int n) { return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n)); }
}  // namespace

TEST_CASE("group construction") {
  auto s3 = FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}});
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.is_abelian());
  CHECK(s3.conjugacy_classes().size() == 3);
  CHECK(FiniteGroup::cyclic(4).element_order(1) == 4);
  CHECK(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)).order() == 4);
  CHECK_THROWS_AS(FiniteGroup::cyclic(13), GroupError);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), GroupError);
  for (int a = 0; a < s3.order(); ++a) {
    int x = 0;
    for (int s : s3.word(a)) x = s3.mult(x, s3.generators()[static_cast<size_t>(s)]);
    CHECK(x == a);
  }
}

TEST_CASE("validate_rep examples") {
  CHECK_NOTHROW(IntegralRep::from_generators(c(2), 2, {int_matrix({{0, 1}, {1, 0}})}));
  CHECK_THROWS_AS(IntegralRep::from_generators(c(2), 2, {int_matrix({{1, 1}, {0, 1}})}), NotAHomomorphism);
  CHECK_NOTHROW(IntegralRep::from_generators(c(3), 2, {int_matrix({{0, -1}, {1, -1}})}));
  CHECK_THROWS_AS(IntegralRep::from_generators(c(2), 1, {int_matrix({{2}})}), GroupError);
}

TEST_CASE("fixed sublattice and dual") {
  auto swap = IntegralRep::from_generators(c(2), 2, {int_matrix({{0, 1}, {1, 0}})});
  CHECK(fixed_sublattice(swap) == Lattice::from_generators(int_matrix({{1}, {1}})));
  CHECK(fixed_sublattice(IntegralRep::trivial(c(3), 3)) == Lattice::full(3));
  auto sign = IntegralRep::from_generators(c(2), 1, {int_matrix({{-1}})});
  CHECK(fixed_sublattice(sign).rank() == 0);
  auto rot = IntegralRep::from_generators(c(3), 2, {int_matrix({{0, -1}, {1, -1}})});
  auto shear = IntegralRep::from_generators(c(2), 2, {int_matrix({{1, 1}, {0, -1}})});
  for (const auto& rep : {swap, sign, rot, shear}) {
    CHECK(dual_rep(dual_rep(rep)) == rep);
    CHECK(fixed_sublattice(dual_rep(rep)).rank() == fixed_sublattice(rep).rank());
  }
}

TEST_CASE("regular representation and restriction") {
  auto g = std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}));
  auto reg = regular_rep(g, 1);
  CHECK_NOTHROW(validate_rep(reg));
  CHECK(fixed_sublattice(reg).rank() == 1);
  auto sub = restrict_rep(reg, {0, g->generators()[0]});
  CHECK(sub.group->order() == 2);
  CHECK_NOTHROW(validate_rep(sub));
}

TEST_CASE("cocycle tables") {
  auto sign = IntegralRep::from_generators(c(2), 1, {int_matrix({{-1}})});
  auto f = CocycleTable::zero(1, 2, 1);
  f.set({1}, int_vector({1}));
  CHECK(f.is_normalized());
  // f(s) = 1 is a crossed homomorphism for the sign action: f(s^2) = f(s) - f(s) = 0.
  CHECK(is_cocycle(sign, f));
  auto triv = IntegralRep::trivial(c(2), 1);
  CHECK_FALSE(is_cocycle(triv, f));
}
