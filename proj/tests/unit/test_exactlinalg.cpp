#include <doctest.h>

#include "toral/exactlinalg.hpp"

#include <random>

using namespace toral;

namespace {

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int bound = 9) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

// Independent check of row Hermite form: pivots positive, strictly increasing,
// entries above each pivot in [0, pivot), zero rows at the bottom.
bool is_row_hermite(const IntMatrix& h) {
  Eigen::Index last = -1;
  bool zero_seen = false;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    Eigen::Index p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (p == h.cols()) {
      zero_seen = true;
      continue;
    }
    if (zero_seen || p <= last || h(i, p) <= 0) return false;
    for (Eigen::Index k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
    for (Eigen::Index k = i + 1; k < h.rows(); ++k)
      if (h(k, p) != 0) return false;
    last = p;
  }
  return true;
}

// Elementary divisors by determinantal divisors, using long long minors for small matrices.
long long det_ll(std::vector<std::vector<long long>> a) {
  const size_t n = a.size();
  long long sign = 1;
  // Bareiss fraction-free elimination.
  long long prev = 1;
  for (size_t k = 0; k + 1 < n || (n == 1 && k == 0); ++k) {
    if (n == 1) return a[0][0];
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

TEST_CASE("hnf worked example and fixed points") {
  IntMatrix m = int_matrix({{2, 4}, {6, 8}});
  auto r = hnf(m);
  CHECK(r.H == int_matrix({{2, 0}, {0, 4}}));
  CHECK(r.U * m == r.H);
  CHECK(abs_value(determinant(r.U)) == 1);
  auto id = hnf(identity_matrix(3));
  CHECK(id.H == identity_matrix(3));
  CHECK(id.U == identity_matrix(3));
  auto z = hnf(zero_matrix(2, 3));
  CHECK(z.H == zero_matrix(2, 3));
}

TEST_CASE("snf worked examples") {
  auto s = snf(int_matrix({{2, 4}, {6, 8}}));
  CHECK(s.D == int_matrix({{2, 0}, {0, 4}}));
  auto d = snf(int_matrix({{1, 0, 0}, {0, 2, 0}, {0, 0, 6}}));
  CHECK(d.D == int_matrix({{1, 0, 0}, {0, 2, 0}, {0, 0, 6}}));
  auto z = snf(int_matrix({{0}}));
  CHECK(z.D == int_matrix({{0}}));
  CHECK(z.rank == 0);
}

TEST_CASE("hnf and snf random properties") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
    IntMatrix m = random_matrix(rng, rows, cols);
    auto h = hnf(m);
    REQUIRE(h.U * m == h.H);
    REQUIRE(abs_value(determinant(h.U)) == 1);
    REQUIRE(is_row_hermite(h.H));
    auto h2 = hnf(h.H);
    REQUIRE(h2.H == h.H);
    REQUIRE(h2.U == identity_matrix(rows));

    auto s = snf(m);
    REQUIRE(s.U * m * s.V == s.D);
    REQUIRE(s.U * s.U_inv == identity_matrix(rows));
    REQUIRE(abs_value(determinant(s.V)) == 1);
    for (Eigen::Index i = 0; i < s.D.rows(); ++i)
      for (Eigen::Index j = 0; j < s.D.cols(); ++j)
        if (i != j) REQUIRE(s.D(i, j) == 0);
    for (Eigen::Index i = 0; i + 1 < s.rank; ++i) REQUIRE(s.D(i + 1, i + 1) % s.D(i, i) == 0);
    for (Eigen::Index i = 0; i < s.rank; ++i) REQUIRE(s.D(i, i) > 0);
    auto s2 = snf(s.D);
    REQUIRE(s2.D == s.D);
  }
}

TEST_CASE("snf square matrices match determinantal divisor oracle") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    IntMatrix m = random_matrix(rng, n, n, 6);
    std::vector<std::vector<long long>> a(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(i, j).convert_to<long long>();
    auto s = snf(m);
    BigInt prod = 1;
    for (int i = 0; i < n; ++i) prod *= s.D(i, i);
    CHECK(prod == abs_value(BigInt(det_ll(a))));
    // First determinantal divisor = gcd of entries.
    BigInt g = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g = gcd_value(g, m(i, j));
    CHECK(s.D(0, 0) == g);
  }
}

TEST_CASE("lattice intersect, saturate and sum examples") {
  Lattice a = Lattice::from_generators(int_matrix({{2, 0}, {0, 1}}));
  Lattice b = Lattice::from_generators(int_matrix({{1, -1}, {1, 1}}));
  CHECK(lattice_intersect(a, b) == Lattice::scaled_full(2, 2));
  CHECK(saturate(Lattice::from_generators(int_matrix({{2}, {4}}))) ==
        Lattice::from_generators(int_matrix({{1}, {2}})));
  CHECK(lattice_sum(a, a) == a);
  CHECK_THROWS_AS(lattice_sum(a, Lattice::full(3)), DimensionError);
}

TEST_CASE("intersection agrees with brute-force residue membership") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix ga = random_matrix(rng, 2, 2, 4), gb = random_matrix(rng, 2, 2, 4);
    if (determinant(ga) == 0 || determinant(gb) == 0) continue;
    Lattice a = Lattice::from_generators(ga), b = Lattice::from_generators(gb);
    Lattice c = lattice_intersect(a, b);
    for (int x = -12; x <= 12; ++x)
      for (int y = -12; y <= 12; ++y) {
        IntVector v = int_vector({x, y});
        REQUIRE(c.contains_vector(v) == (a.contains_vector(v) && b.contains_vector(v)));
      }
  }
}

TEST_CASE("quotient invariants") {
  auto g = quotient_invariants(Lattice::scaled_full(2, 2), Lattice::full(2));
  CHECK(g.invariant_factors == std::vector<BigInt>{2, 2});
  CHECK(g.free_rank == 0);
  auto f = quotient_invariants(Lattice::from_generators(int_matrix({{1, 1}, {1, -1}})), Lattice::full(2));
  CHECK(f.invariant_factors == std::vector<BigInt>{2});
  auto h = quotient_invariants(Lattice::from_generators(int_matrix({{1}, {0}})), Lattice::full(2));
  CHECK(h.invariant_factors.empty());
  CHECK(h.free_rank == 1);
  CHECK_THROWS_AS(quotient_invariants(Lattice::full(2), Lattice::scaled_full(2, 2)), DimensionError);
  for (int n = 1; n <= 12; ++n)
    for (int r = 1; r <= 4; ++r) {
      auto q = quotient_invariants(Lattice::scaled_full(r, n), Lattice::full(r));
      if (n == 1) CHECK(q.invariant_factors.empty());
      else CHECK(q.invariant_factors == std::vector<BigInt>(static_cast<size_t>(r), BigInt(n)));
    }
}

TEST_CASE("lattice absorption and saturation laws") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 4);
    Lattice l = Lattice::from_generators(random_matrix(rng, r, 1 + static_cast<int>(rng() % 3), 5));
    Lattice m = Lattice::from_generators(random_matrix(rng, r, 1 + static_cast<int>(rng() % 3), 5));
    REQUIRE(lattice_sum(l, lattice_intersect(l, m)) == l);
    REQUIRE(lattice_intersect(l, lattice_sum(l, m)) == l);
    Lattice s = saturate(l);
    REQUIRE(saturate(s) == s);
    REQUIRE(s.contains(l));
    REQUIRE(quotient_invariants(l, s).free_rank == 0);
  }
}

TEST_CASE("preimage and image") {
  IntMatrix m = int_matrix({{2, 0}, {0, 3}});
  Lattice pre = preimage(m, Lattice::scaled_full(2, 6));
  CHECK(pre == Lattice::from_generators(int_matrix({{3, 0}, {0, 2}})));
  CHECK(image(m, Lattice::full(2)) == Lattice::from_generators(m));
}

TEST_CASE("canonical basis is the equality test") {
  Lattice a = Lattice::from_generators(int_matrix({{1, 3}, {1, 1}}));
  Lattice b = Lattice::from_generators(int_matrix({{1, 0}, {1, 2}}));
  CHECK(a == b);
  CHECK(a.basis() == b.basis());
  CHECK(a.index() == 2);
}

TEST_CASE("intermediate lattices between 2Z^2 and Z^2") {
  auto all = intermediate_lattices(Lattice::scaled_full(2, 2), Lattice::full(2));
  // Subgroups of (Z/2)^2: trivial, three of order 2, whole group.
  CHECK(all.size() == 5);
  auto c4 = intermediate_lattices(Lattice::scaled_full(1, 12), Lattice::full(1));
  CHECK(c4.size() == 6);
}

TEST_CASE("rational linear algebra") {
  RatMatrix m = to_rational(int_matrix({{1, 2}, {2, 4}}));
  CHECK(rational_rank(m) == 1);
  RatMatrix ns = rational_nullspace(m);
  CHECK(ns.cols() == 1);
  CHECK((m * ns).isZero());
  RatMatrix inv = rational_inverse(to_rational(int_matrix({{2, 1}, {1, 1}})));
  CHECK(inv == to_rational(int_matrix({{1, -1}, {-1, 2}})));
  CHECK(divisors(12) == std::vector<BigInt>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("finite abelian group description") {
  auto g = FiniteAbelianGroup::from_diagonal({1, 2, 4}, 1);
  CHECK(g.invariant_factors == std::vector<BigInt>{2, 4});
  CHECK(g.order() == 8);
  CHECK(g.exponent() == 4);
  CHECK(g.describe() == "Z/2 + Z/4 + Z");
  CHECK(FiniteAbelianGroup{}.describe() == "0");
}
