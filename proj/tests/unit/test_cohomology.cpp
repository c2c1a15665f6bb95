#include <doctest.h>

#include "toral/cohomology.hpp"
#include "../support/oracles.hpp"

#include <random>

using namespace toral;

namespace {
std::shared_ptr<const FiniteGroup> cyc(int n) { return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n)); }
IntegralRep sign_rep() { return IntegralRep::from_generators(cyc(2), 1, {int_matrix({{-1}})}); }

IntVector random_cochain(std::mt19937& rng, const CochainSpace& sp) {
  std::uniform_int_distribution<int> dist(-3, 3);
  IntVector v(sp.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = dist(rng);
  return v;
}
}  // namespace

TEST_CASE("worked examples") {
  auto triv = IntegralRep::trivial(cyc(2), 1);
  CHECK(cohomology(triv, 2)->group().describe() == "Z/2");
  CHECK(cohomology(sign_rep(), 3)->group().describe() == "Z/2");
  auto reg = regular_rep(cyc(2));
  for (int n = 1; n <= 3; ++n) CHECK(cohomology(reg, n)->group().is_trivial());
  CHECK(cohomology(triv, 0)->group().free_rank == 1);
  CHECK_THROWS_AS(cohomology(triv, 4), CohomologyError);
}

TEST_CASE("normalized cochain layout round trip") {
  CochainSpace sp{4, 2, 3};
  CHECK(sp.tuples() == 9);
  for (long long t = 0; t < sp.tuples(); ++t) CHECK(sp.tuple_index(sp.tuple_at(t)) == t);
  CHECK(sp.tuple_index({0, 2}) == -1);
  auto rep = IntegralRep::trivial(cyc(4), 3);
  std::mt19937 rng(1);
  IntVector v = random_cochain(rng, sp);
  auto table = from_normalized(v, 2, 4, 3);
  CHECK(table.is_normalized());
  CHECK(to_normalized(table) == v);
  // Agreement with the full bar coboundary on normalized tables.
  IntVector dv = apply_coboundary(rep, 2, v);
  CHECK(to_normalized(coboundary(rep, table)) == dv);
}

TEST_CASE("d o d = 0 on random cochains") {
  std::mt19937 rng(5);
  for (int n : {2, 3, 4, 6}) {
    for (const auto& nr : testing::block_built_reps(n, 3)) {
      for (int k = 0; k <= 2; ++k) {
        CochainSpace sp{n, k, nr.rep.rank};
        IntVector f = random_cochain(rng, sp);
        IntVector ddf = apply_coboundary(nr.rep, k + 1, apply_coboundary(nr.rep, k, f));
        REQUIRE_MESSAGE(ddf.isZero(), nr.name << " degree " << k);
      }
    }
  }
}

TEST_CASE("generators project to unit vectors and coboundaries project to zero") {
  std::mt19937 rng(9);
  for (int n : {2, 4, 6}) {
    for (const auto& nr : testing::block_built_reps(n, 2)) {
      for (int k = 1; k <= 3; ++k) {
        auto h = cohomology(nr.rep, k);
        const auto& gens = h->generators();
        for (size_t i = 0; i < gens.size(); ++i) {
          auto c = h->coordinates(gens[i]);
          for (size_t j = 0; j < c.size(); ++j) REQUIRE(c[j] == (i == j ? 1 : 0));
          REQUIRE(apply_coboundary(nr.rep, k, gens[i]).isZero());
        }
        CochainSpace below{n, k - 1, nr.rep.rank};
        IntVector b = apply_coboundary(nr.rep, k - 1, random_cochain(rng, below));
        REQUIRE(h->is_zero_class(b));
        auto pre = h->coboundary_preimage(b);
        REQUIRE(pre.has_value());
        REQUIRE(apply_coboundary(nr.rep, k - 1, *pre) == b);
        for (const auto& g : gens) REQUIRE_FALSE(h->coboundary_preimage(g).has_value());
      }
    }
  }
}

TEST_CASE("periodic formula oracle on block-built cyclic reps up to rank 3") {
  for (int n : {2, 3, 4, 6}) {
    for (const auto& nr : testing::block_built_reps(n, 3)) {
      for (int k = 0; k <= 3; ++k) {
        auto expected = testing::periodic_cohomology(nr.generator, n, k);
        REQUIRE_MESSAGE(cohomology(nr.rep, k)->group() == expected, nr.name << " H^" << k);
      }
    }
  }
}

TEST_CASE("Shapiro vanishing for regular modules") {
  std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(3),
                                  FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))};
  for (const auto& g : groups) {
    auto gp = std::make_shared<const FiniteGroup>(g);
    for (int copies = 1; copies <= 2; ++copies)
      for (int k = 1; k <= 3; ++k) CHECK(cohomology(regular_rep(gp, copies), k)->group().is_trivial());
  }
}

TEST_CASE("induced maps") {
  auto sign = sign_rep();
  auto h3 = cohomology(sign, 3);
  CHECK(induced_map(identity_matrix(1), *h3, *h3) == int_matrix({{1}}));
  for (int n = 1; n <= 6; ++n) {
    auto m = induced_map(int_matrix({{n}}), *h3, *h3);
    CHECK(mod_floor(m(0, 0), BigInt(2)) == n % 2);
  }
  IntegralRep zero = IntegralRep::trivial(sign.group, 0);
  auto hz = cohomology(zero, 3);
  CHECK(induced_map(IntMatrix::Zero(0, 1), *h3, *hz).size() == 0);
  CHECK_THROWS_AS(induced_map(int_matrix({{1}}), *h3, *cohomology(IntegralRep::trivial(sign.group, 1), 3)),
                  CohomologyError);
  // Functoriality: (x3) o (x5) = x15.
  auto a = induced_map(int_matrix({{3}}), *h3, *h3), b = induced_map(int_matrix({{5}}), *h3, *h3);
  CHECK(mod_floor(BigInt((a * b)(0, 0)), BigInt(2)) ==
        mod_floor(induced_map(int_matrix({{15}}), *h3, *h3)(0, 0), BigInt(2)));
}

TEST_CASE("cache returns shared results") {
  auto triv = IntegralRep::trivial(cyc(3), 1);
  auto a = cohomology(triv, 2);
  auto b = cohomology(triv, 2);
  CHECK(a == b);
  CHECK(cohomology_cache_size() >= 1);
}
