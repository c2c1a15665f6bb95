#include "toral/blockatlas.hpp"
#include "toral/specfile.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>

using namespace toral;

namespace {

ToralGroupSpec builtin(const std::string& name) { return build_spec(load_spec(name)); }

SubgroupConstraints exponent_cap(long long e) {
  SubgroupConstraints c;
  c.max_exponent = BigInt(e);
  return c;
}

const Family& family(const Catalog& c, const std::string& name) {
  return c.families[static_cast<size_t>(c.family_index(name))];
}

SubgroupClass member(const ToralGroupSpec& spec, const Catalog& c, const std::string& name,
                     std::vector<BigInt> params = {}) {
  return family(c, name).instantiate(spec, params);
}

// Exponent of the finite group big/small for small ⊆ big.
BigInt index_exponent(const TorusSubgroup& small, const TorusSubgroup& big) {
  return quotient_invariants(big.ann(), small.ann()).exponent();
}

}  // namespace

TEST_CASE("built-in specs parse, validate and round-trip") {
  for (const auto& name : builtin_names()) {
    SpecFile s = load_spec(name);
    SpecFile again = parse_spec(serialize(s));
    CHECK(again == s);
    CHECK(serialize(again) == serialize(s));
    ToralGroupSpec a = build_spec(s), b = build_spec(again);
    CHECK(a.rep() == b.rep());
    CHECK(a.epsilon() == b.epsilon());
  }
}

TEST_CASE("spec files reject unknown keys and malformed input") {
  CHECK_THROWS_AS(parse_spec("name x\nrank 1\ngroup cyclic 2\nrho -1\nfrobnicate 3\n"), SpecError);
  CHECK_THROWS_AS(parse_spec("rank 1\ngroup cyclic 2\n"), SpecError);
  CHECK_THROWS_AS(parse_spec("name x\nrank 1\ngroup cyclic 2\nrho -1 2\n"), SpecError);
  CHECK_THROWS_AS(build_spec(parse_spec("name x\nrank 1\ngroup cyclic 2\nrho 2\nepsilon zero\n")), SpecError);
  CHECK_THROWS_AS(build_spec(parse_spec("name x\nrank 1\ngroup cyclic 13\nrho 1\nepsilon zero\n")), CapExceeded);
  CHECK_THROWS_AS(build_spec(parse_spec("name x\nrank 7\ngroup cyclic 1\nepsilon zero\n")), CapExceeded);
  CHECK_THROWS_AS(parse_spec("name x\nrank 1\ngroup cyclic 2\nfamily D n\n  ann m\n"), SpecError);
  CHECK_THROWS_AS(build_spec(parse_spec("name x\nrank 1\ngroup cyclic 2\nrho -1\nepsilon generator 3\n")), SpecError);
}

TEST_CASE("classify: O(2), Pin(2) and the circle") {
  auto o2 = builtin("o2");
  auto c = classify(o2, exponent_cap(4));
  REQUIRE(c.size() == 5);
  int finite = 0;
  for (const auto& k : c) {
    CHECK(k.coordinates.empty());
    if (k.S.is_finite()) ++finite;
  }
  CHECK(finite == 4);

  auto pin2 = builtin("pin2");
  CHECK(cohomology(pin2.rep(), 3)->group().describe() == "Z/2");
  CHECK_FALSE(pin2.epsilon_class().is_zero());
  auto p = classify(pin2, exponent_cap(4));
  std::vector<BigInt> orders;
  for (const auto& k : p)
    if (k.S.is_finite()) orders.push_back(k.S.pi0().order());
  CHECK(orders == std::vector<BigInt>{2, 4});
  CHECK(p.size() == 3);

  auto circle = builtin("circle");
  CHECK(classify(circle, exponent_cap(6)).size() == 7);
}

TEST_CASE("catalog members agree with classification") {
  for (const std::string name : {"o2", "pin2", "u2norm", "c3rot"}) {
    auto spec = builtin(name);
    auto file = load_spec(name);
    auto classes = classify(spec, exponent_cap(6));
    for (const auto& e : truncate(spec, file.catalog, 6)) {
      if (!e.cls.image->is_full) continue;
      if (e.cls.S.is_finite() && e.cls.S.pi0().exponent() > 6) continue;
      bool found = false;
      for (const auto& k : classes) found = found || k == e.cls;
      CHECK_MESSAGE(found, name << " " << e.cls.describe());
    }
  }
  // u2norm: every full class with exponent ≤ 6 is a catalog member.
  auto spec = builtin("u2norm");
  auto file = load_spec("u2norm");
  auto entries = truncate(spec, file.catalog, 12);
  for (const auto& k : classify(spec, exponent_cap(6))) {
    bool found = false;
    for (const auto& e : entries) found = found || e.cls == k;
    CHECK_MESSAGE(found, k.describe());
  }
}

TEST_CASE("tau and omega examples") {
  auto o2 = builtin("o2");
  auto cat = load_spec("o2").catalog;
  for (int n = 1; n <= 5; ++n) {
    auto d = member(o2, cat, "D", {n});
    CHECK(omega(d) == d);
    CHECK(tau(d).is_finite());
    CHECK(tau(d).pi0().order() == 1);
    CHECK(has_finite_weyl(d));
  }
  auto circle = builtin("circle");
  auto ccat = load_spec("circle").catalog;
  for (int n = 1; n <= 5; ++n) {
    auto c = member(circle, ccat, "C", {n});
    CHECK(omega(c).S.dim() == 1);
    CHECK(tau(c) == c.S);
    CHECK_FALSE(has_finite_weyl(c));
  }
  auto swap = builtin("t2swap-lf");
  auto diag = class_from_coordinates(swap.full_image(), TorusSubgroup::central_torus_T1(swap.context()), {});
  CHECK(has_finite_weyl(diag));
  CHECK(omega(diag) == diag);
  CHECK(tau(diag) == TorusSubgroup::central_torus_T1(swap.context()));
}

TEST_CASE("cotoral relation examples") {
  auto circle = builtin("circle");
  auto ccat = load_spec("circle").catalog;
  auto so2 = member(circle, ccat, "SO2");
  for (int n = 1; n <= 6; ++n) CHECK(cotoral_le(member(circle, ccat, "C", {n}), so2));

  auto o2 = builtin("o2");
  auto cat = load_spec("o2").catalog;
  auto full = member(o2, cat, "O2");
  CHECK_FALSE(cotoral_le(member(o2, cat, "D", {1}), full));
  for (int n = 1; n <= 4; ++n) CHECK_FALSE(cotoral_le(member(o2, cat, "D", {n}), member(o2, cat, "D", {2 * n})));
  CHECK(cotoral_le(member(o2, cat, "C", {3}), member(o2, cat, "SO2")));
  CHECK_FALSE(cotoral_le(member(o2, cat, "SO2"), full));
}

TEST_CASE("lambda fibres of the U(2) normalizer model follow the parity rule") {
  auto spec = builtin("u2norm");
  const auto& ctx = spec.context();
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n) {
      auto f = lambda_fibre(spec, central_label(ctx, m), moving_label(spec, n));
      size_t expect;
      if (m == 0) expect = 1;
      else if (n == 0) expect = 2;
      else expect = (m - n) % 2 == 0 ? 3 : 2;
      CHECK_MESSAGE(f.classes.size() == expect, "m=" << m << " n=" << n);
      CHECK(f.threshold == 2);
      for (const auto& k : f.classes) {
        auto l = lambda(k);
        CHECK(l.first == central_label(ctx, m));
        CHECK(l.second == moving_label(spec, n));
      }
    }
}

TEST_CASE("standard neighbourhoods") {
  auto o2 = builtin("o2");
  auto cat = load_spec("o2").catalog;
  for (int n = 1; n <= 12; ++n)
    for (int a = 1; a <= 14; ++a) {
      bool brute = false;
      for (int x = a; x <= n; ++x) brute = brute || n % x == 0;
      CHECK(in_neighbourhood(member(o2, cat, "D", {n}), {BigInt(a)}) == brute);
    }
  CHECK(in_neighbourhood(member(o2, cat, "O2"), {std::nullopt}));
  CHECK_FALSE(in_neighbourhood(member(o2, cat, "D", {3}), {std::nullopt}));
  auto u2 = builtin("u2norm");
  auto ucat = load_spec("u2norm").catalog;
  CHECK(in_neighbourhood(member(u2, ucat, "H"), {BigInt(5)}));
  CHECK(in_neighbourhood(member(u2, ucat, "K", {3}), {BigInt(2)}));
  CHECK(in_neighbourhood(member(u2, ucat, "K", {3}), {BigInt(6)}));
  CHECK_FALSE(in_neighbourhood(member(u2, ucat, "K", {3}), {BigInt(7)}));
  for (int t = 1; t <= 5; ++t) CHECK_FALSE(in_neighbourhood(member(u2, ucat, "F0", {2, 3}), {BigInt(t)}));
  CHECK_THROWS_AS(in_neighbourhood(member(u2, ucat, "H"), {}), AtlasError);
}

TEST_CASE("convergence of chains") {
  auto circle = builtin("circle");
  auto ccat = load_spec("circle").catalog;
  std::vector<SubgroupClass> fact, constant;
  BigInt f = 1;
  for (int i = 1; i <= 6; ++i) {
    f *= i;
    fact.push_back(member(circle, ccat, "C", {f}));
    constant.push_back(member(circle, ccat, "C", {2}));
  }
  CHECK(converges(fact, member(circle, ccat, "SO2")).converges);
  CHECK_FALSE(converges(constant, member(circle, ccat, "C", {4})).converges);
  CHECK_FALSE(converges(fact, member(circle, ccat, "C", {720})).converges);
  std::vector<SubgroupClass> bad{member(circle, ccat, "C", {4}), member(circle, ccat, "C", {6})};
  CHECK_THROWS_AS(converges(bad, member(circle, ccat, "SO2")), AtlasError);

  auto o2 = builtin("o2");
  auto cat = load_spec("o2").catalog;
  std::vector<SubgroupClass> dihedral;
  f = 1;
  for (int i = 1; i <= 6; ++i) {
    f *= i;
    dihedral.push_back(member(o2, cat, "D", {f}));
  }
  CHECK(converges(dihedral, member(o2, cat, "O2")).converges);
  CHECK_FALSE(converges(dihedral, member(o2, cat, "SO2")).converges);

  // Lift data must transport: F1 chains reach E1, not E0.
  auto u2 = builtin("u2norm");
  auto ucat = load_spec("u2norm").catalog;
  std::vector<SubgroupClass> f1;
  for (const auto& p : saturating_sequence(u2, family(ucat, "F1"), {BigInt(3), BigInt(1)}, 1, 5))
    f1.push_back(family(ucat, "F1").instantiate(u2, p));
  CHECK(converges(f1, member(u2, ucat, "E1", {3})).converges);
  CHECK_FALSE(converges(f1, member(u2, ucat, "E0", {3})).converges);
}

TEST_CASE("sigma merge examples") {
  auto u2 = builtin("u2norm");
  const auto& ctx = u2.context();
  auto full = moving_label(u2, 0);
  auto t1 = TorusSubgroup::central_torus_T1(ctx);
  CHECK(sigma_merge(full, t1) == TorusSubgroup::full_torus(ctx));
  CHECK(sigma_merge(full, TorusSubgroup::trivial_subgroup(ctx)) == TorusSubgroup::moving_torus_Tf(ctx));
  auto ucat = load_spec("u2norm").catalog;
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) {
      // Ŝ ∩ T_f is the antidiagonal 2n-torsion; adding A_m gives F(m, n).
      auto s = sigma_merge(moving_label(u2, n), central_label(ctx, m));
      CHECK(s == member(u2, ucat, "F0", {m, n}).S);
    }
}

TEST_CASE("Cantor-Bendixson ranks match the predicted block shape") {
  std::map<std::string, int> expected{{"circle", 1}, {"o2", 1}, {"u2norm", 2}, {"c3rot", 1}, {"t2swap-lf", 1}, {"point2", 0}};
  for (const auto& [name, r] : expected) {
    auto file = load_spec(name);
    CHECK_MESSAGE(cb_rank(file.catalog) == r, name);
  }
  for (const std::string name : {"circle", "o2", "u2norm"}) {
    auto spec = builtin(name);
    CHECK(cb_rank(load_spec(name).catalog) == predicted_block_shape(spec.context()->isotypic).total());
  }
  Catalog cyclic;
  cyclic.families = {Family{"A", {"n"}, {}, {}, {}, {}}, Family{"B", {"n"}, {}, {}, {}, {}}};
  cyclic.limits = {{"A", 0, "B"}, {"B", 0, "A"}};
  CHECK_THROWS_AS(cb_rank(cyclic), AtlasError);
}

TEST_CASE("partition of the built-in catalogs") {
  for (const auto& name : builtin_names()) {
    auto spec = builtin(name);
    auto file = load_spec(name);
    auto p = partition(spec, file.catalog);
    auto check = check_partition(spec, file.catalog, p);
    CHECK_MESSAGE(check.ok(), name << ": " << check.failure);
  }
  auto circle = builtin("circle");
  CHECK(partition(circle, load_spec("circle").catalog).blocks.size() == 1);

  auto point = builtin("point2");
  auto pp = partition(point, load_spec("point2").catalog);
  CHECK(pp.blocks.size() == 2);
  for (const auto& b : pp.blocks) CHECK(b.members.size() == 1);

  // O(2): {O(2), D_2n : n ≥ 2}, {D_2}, {SO(2), C_n}.
  auto o2 = builtin("o2");
  auto cat = load_spec("o2").catalog;
  auto p = partition(o2, cat);
  CHECK(p.threshold == 2);
  REQUIRE(p.blocks.size() == 3);
  std::map<std::string, std::vector<std::string>> contents;
  for (const auto& b : p.blocks)
    for (size_t i : b.members) contents[p.entries[b.dominant].cls.label].push_back(p.entries[i].cls.label);
  CHECK(contents["O2"].size() == p.truncation);
  CHECK(contents["D(1)"] == std::vector<std::string>{"D(1)"});
  CHECK(contents["SO2"].size() == p.truncation + 1);
}

TEST_CASE("partition rejects a non-closed limit structure") {
  auto o2 = builtin("o2");
  auto cat = load_spec("o2").catalog;
  cat.limits.push_back({"D", 0, "SO2"});
  CHECK_THROWS_AS(partition(o2, cat), AtlasError);
  auto cat2 = load_spec("circle").catalog;
  cat2.limits = {{"C", 0, "Missing"}};
  CHECK_THROWS_AS(partition(builtin("circle"), cat2), AtlasError);
}

TEST_CASE("structural laws on classified classes") {
  for (const auto& name : builtin_names()) {
    auto spec = builtin(name);
    const auto& ctx = spec.context();
    auto t1 = TorusSubgroup::central_torus_T1(ctx), tf = TorusSubgroup::moving_torus_Tf(ctx);
    auto top = moving_label(spec, 0);
    const BigInt lf = ctx->isotypic.L_f.exponent();
    for (const auto& k : classify(spec, exponent_cap(4))) {
      INFO(name << " " << k.describe());
      CHECK(has_finite_weyl(k) == k.S.contains(t1));
      if (cotoral_le(k, top)) CHECK(k.S.contains(tf));
      auto w = omega(k);
      CHECK(has_finite_weyl(w));
      CHECK(omega(w) == w);
      CHECK(cotoral_le(k, w));
      auto [a, khat] = lambda(k);
      auto merged = sigma_merge(khat, a);
      auto direct = sum(intersect(k.S, tf), a);
      CHECK(merged.contains(k.S));
      CHECK(merged.contains(direct));
      CHECK(sum(merged, t1) == sum(k.S, t1));
      CHECK(sum(merged, tf) == sum(k.S, tf));
      CHECK(lf % index_exponent(direct, merged) == 0);
    }
  }
}

TEST_CASE("subgroups containing T[n] support the extension class") {
  for (const auto& name : builtin_names()) {
    auto spec = builtin(name);
    BigInt n = exponent_H2T(spec.rep());
    SubgroupConstraints c = exponent_cap(6);
    c.must_contain.push_back(TorusSubgroup::torsion_subgroup(spec.context(), n));
    for (const auto& s : enumerate_invariant_subgroups(spec.context(), c))
      CHECK_MESSAGE(supports_epsilon(s, spec.epsilon()), name << " " << s.describe());
  }
}

TEST_CASE("spec files load from a path") {
  const std::string path = "toral_test_spec.txt";
  {
    std::ofstream f(path);
    f << builtin_text("u2norm");
  }
  CHECK(load_spec(path) == load_spec("u2norm"));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_spec("no-such-spec-file"), SpecError);
}
