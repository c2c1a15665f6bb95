#include <doctest.h>

#include "toral/isotypic.hpp"

using namespace toral;

namespace {
std::shared_ptr<const FiniteGroup> cyc(int n) { return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n)); }
IntegralRep swap_rep() { return IntegralRep::from_generators(cyc(2), 2, {int_matrix({{0, 1}, {1, 0}})}); }
}  // namespace

TEST_CASE("commutant dimensions") {
  CHECK(endo_algebra(swap_rep()).size() == 2);
  CHECK(endo_algebra(IntegralRep::trivial(cyc(2), 3)).size() == 9);
  auto rot = IntegralRep::from_generators(cyc(3), 2, {int_matrix({{0, -1}, {1, -1}})});
  CHECK(endo_algebra(rot).size() == 2);
  for (const auto& x : endo_algebra(rot)) CHECK(to_rational(rot(1)) * x == x * to_rational(rot(1)));
}

TEST_CASE("swap decomposition") {
  auto d = decompose(swap_rep());
  REQUIRE(d.pieces.size() == 2);
  CHECK(d.pieces[0].is_trivial_type);
  CHECK(d.pieces[0].lattice == Lattice::from_generators(int_matrix({{1}, {1}})));
  CHECK(d.pieces[1].lattice == Lattice::from_generators(int_matrix({{1}, {-1}})));
  CHECK(d.pieces[1].multiplicity == 1);
  CHECK(d.L.describe() == "Z/2");
  CHECK(d.L_f.describe() == "Z/2");
  auto shape = predicted_block_shape(d);
  CHECK(shape.poset_rank == 1);
  CHECK(shape.stone_ranks == std::vector<int>{1});
  CHECK(shape.total() == 2);
}

TEST_CASE("trivial and sign reps") {
  for (int r = 1; r <= 4; ++r) {
    auto d = decompose(IntegralRep::trivial(cyc(3), r));
    REQUIRE(d.pieces.size() == 1);
    CHECK(d.pieces[0].multiplicity == r);
    CHECK(d.pieces[0].is_trivial_type);
    CHECK(d.L.is_trivial());
    CHECK(predicted_block_shape(d).total() == r);
  }
  auto sign = decompose(IntegralRep::from_generators(cyc(2), 1, {int_matrix({{-1}})}));
  REQUIRE(sign.pieces.size() == 1);
  CHECK_FALSE(sign.pieces[0].is_trivial_type);
  auto shape = predicted_block_shape(sign);
  CHECK(shape.poset_rank == 0);
  CHECK(shape.total() == 1);
}

TEST_CASE("rotation pieces") {
  auto rot = decompose(IntegralRep::from_generators(cyc(3), 2, {int_matrix({{0, -1}, {1, -1}})}));
  REQUIRE(rot.pieces.size() == 1);
  CHECK(rot.pieces[0].dim == 2);
  CHECK(rot.pieces[0].multiplicity == 1);
  CHECK(rot.pieces[0].division_dim == 2);
  CHECK(rot.trivial_piece() == nullptr);
  // Two copies of the rotation: multiplicity 2 over the field Q(w).
  IntMatrix r2 = IntMatrix::Zero(4, 4);
  r2.topLeftCorner(2, 2) = int_matrix({{0, -1}, {1, -1}});
  r2.bottomRightCorner(2, 2) = int_matrix({{0, -1}, {1, -1}});
  auto two = decompose(IntegralRep::from_generators(cyc(3), 4, {r2}));
  REQUIRE(two.pieces.size() == 1);
  CHECK(two.pieces[0].multiplicity == 2);
  CHECK(two.pieces[0].simple_dim == 2);
}

TEST_CASE("regular rep of S3 and the quaternion group") {
  auto s3 = std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}));
  auto d = decompose(regular_rep(s3));
  REQUIRE(d.pieces.size() == 3);
  int total = 0;
  for (const auto& p : d.pieces) total += p.dim;
  CHECK(total == 6);
  // The 2-dimensional simple occurs twice in the regular representation.
  CHECK(d.pieces[2].dim == 4);
  CHECK(d.pieces[2].multiplicity == 2);
  CHECK(d.pieces[2].division_dim == 1);

  // Q8 acting on the Hurwitz-style lattice Z^4 by left multiplication: End is the quaternions.
  IntMatrix i = int_matrix({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  IntMatrix j = int_matrix({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
  // Build Q8 as permutations of its own elements via the matrices.
  std::vector<IntMatrix> elems{identity_matrix(4)};
  for (size_t k = 0; k < elems.size(); ++k)
    for (const auto& g : {i, j}) {
      IntMatrix p = elems[k] * g;
      if (std::find(elems.begin(), elems.end(), p) == elems.end()) elems.push_back(p);
    }
  REQUIRE(elems.size() == 8);
  std::vector<std::vector<int>> perms;
  for (const auto& g : {i, j}) {
    std::vector<int> p;
    for (const auto& e : elems)
      p.push_back(static_cast<int>(std::find(elems.begin(), elems.end(), e * g) - elems.begin()));
    perms.push_back(p);
  }
  auto q8 = std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(perms));
  // Permutation p_g sends e to e*g, so the element list maps to right multiplication.
  auto rep = IntegralRep::from_generators(q8, 4, {i, j});
  auto dq = decompose(rep);
  REQUIRE(dq.pieces.size() == 1);
  CHECK(dq.pieces[0].multiplicity == 1);
  CHECK(dq.pieces[0].division_dim == 4);
}

TEST_CASE("projector and index properties on block-diagonal reps") {
  IntMatrix m = IntMatrix::Zero(3, 3);
  m(0, 0) = 1;
  m.bottomRightCorner(2, 2) = int_matrix({{0, -1}, {1, -1}});
  auto d = decompose(IntegralRep::from_generators(cyc(3), 3, {m}));
  CHECK(d.pieces.size() == 2);
  CHECK(d.L.is_trivial());
  int total = 0;
  for (const auto& p : d.pieces) total += p.dim;
  CHECK(total == 3);
  // Direct sum refines compatibly: trivial-type dimension adds.
  auto swap = swap_rep();
  auto dd = decompose(direct_sum(swap, swap));
  REQUIRE(dd.trivial_piece() != nullptr);
  CHECK(dd.trivial_piece()->dim == 2);
}
