#include "toral/polyfactor.hpp"

#include "toral/exactlinalg.hpp"

#include <algorithm>
#include <random>

namespace toral {

int degree(const IntPoly& f) { return static_cast<int>(f.size()) - 1; }
int degree(const RatPoly& f) { return static_cast<int>(f.size()) - 1; }

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
void trim(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly c(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly c(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

void poly_divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  if (b.empty()) throw FactorizationError("polynomial division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  while (!r.empty() && r.size() >= b.size()) {
    const size_t shift = r.size() - b.size();
    Rational c = r.back() / b.back();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    trim(r);
  }
  trim(q);
}

RatPoly make_monic(const RatPoly& f) {
  if (f.empty()) return f;
  RatPoly g = f;
  Rational lc = f.back();
  for (auto& c : g) c /= lc;
  return g;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

RatPoly derivative(const RatPoly& f) {
  RatPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * Rational(static_cast<long long>(i)));
  trim(d);
  return d;
}

RatPoly squarefree_part(const RatPoly& f) {
  RatPoly g = f;
  trim(g);
  if (g.empty()) throw FactorizationError("zero polynomial has no squarefree part");
  RatPoly d = poly_gcd(g, derivative(g));
  RatPoly q, r;
  poly_divmod(g, d, q, r);
  return make_monic(q);
}

namespace {

// Arithmetic on polynomials with coefficients reduced into [0, m).
struct ModRing {
  BigInt m;

  IntPoly reduce(IntPoly f) const {
    for (auto& c : f) c = mod_floor(c, m);
    trim(f);
    return f;
  }
  IntPoly add(const IntPoly& a, const IntPoly& b) const {
    IntPoly c(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return reduce(c);
  }
  IntPoly sub(const IntPoly& a, const IntPoly& b) const {
    IntPoly c(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return reduce(c);
  }
  IntPoly mul(const IntPoly& a, const IntPoly& b) const {
    if (a.empty() || b.empty()) return {};
    IntPoly c(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return reduce(c);
  }
  IntPoly scale(const IntPoly& a, const BigInt& s) const {
    IntPoly c = a;
    for (auto& x : c) x *= s;
    return reduce(c);
  }
  BigInt inverse(const BigInt& a) const {
    BigInt s, t;
    BigInt g = ext_gcd(mod_floor(a, m), m, s, t);
    if (g != 1) throw FactorizationError("leading coefficient not invertible");
    return mod_floor(s, m);
  }
  void divmod(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r) const {
    if (b.empty()) throw FactorizationError("polynomial division by zero");
    r = reduce(a);
    BigInt inv = inverse(b.back());
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, BigInt(0));
    while (!r.empty() && r.size() >= b.size()) {
      const size_t shift = r.size() - b.size();
      BigInt c = mod_floor(BigInt(r.back() * inv), m);
      q[shift] = c;
      for (size_t i = 0; i < b.size(); ++i) r[shift + i] = mod_floor(BigInt(r[shift + i] - c * b[i]), m);
      trim(r);
    }
    trim(q);
  }
  IntPoly rem(const IntPoly& a, const IntPoly& b) const {
    IntPoly q, r;
    divmod(a, b, q, r);
    return r;
  }
  IntPoly monic(const IntPoly& f) const {
    if (f.empty()) return f;
    return scale(f, inverse(f.back()));
  }
  // Valid for prime m only.
  IntPoly gcd(IntPoly a, IntPoly b) const {
    a = reduce(a);
    b = reduce(b);
    while (!b.empty()) {
      IntPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // s*a + t*b = 1 for coprime a, b (prime m).
  void bezout(const IntPoly& a, const IntPoly& b, IntPoly& s, IntPoly& t) const {
    IntPoly r0 = reduce(a), r1 = reduce(b), s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      IntPoly q, r;
      divmod(r0, r1, q, r);
      IntPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.size() != 1) throw FactorizationError("factors are not coprime modulo p");
    BigInt inv = inverse(r0[0]);
    s = scale(s0, inv);
    t = scale(t0, inv);
  }
  IntPoly powmod(IntPoly base, BigInt e, const IntPoly& mod) const {
    IntPoly result{1};
    base = rem(base, mod);
    while (e > 0) {
      if (e % 2 == 1) result = rem(mul(result, base), mod);
      base = rem(mul(base, base), mod);
      e /= 2;
    }
    return result;
  }
};

bool is_probable_small_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<IntPoly> equal_degree_split(const ModRing& R, const IntPoly& g, int d, std::mt19937_64& rng) {
  if (degree(g) == d) return {g};
  const BigInt p = R.m;
  BigInt exponent = 1;
  for (int i = 0; i < d; ++i) exponent *= p;
  exponent = (exponent - 1) / 2;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    IntPoly a(static_cast<size_t>(degree(g)));
    for (auto& c : a) c = BigInt(static_cast<long long>(rng() % p.convert_to<unsigned long long>()));
    a = R.reduce(a);
    if (degree(a) < 1) continue;
    IntPoly b = R.sub(R.powmod(a, exponent, g), IntPoly{1});
    IntPoly c = R.gcd(b, g);
    if (degree(c) > 0 && degree(c) < degree(g)) {
      IntPoly q, r;
      R.divmod(g, c, q, r);
      auto left = equal_degree_split(R, c, d, rng);
      auto right = equal_degree_split(R, R.monic(q), d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
  throw FactorizationError("equal-degree splitting did not converge");
}

std::vector<IntPoly> factor_mod_prime(const ModRing& R, IntPoly f) {
  std::mt19937_64 rng(0x5eed1234ULL);
  std::vector<IntPoly> out;
  IntPoly x{0, 1};
  IntPoly h = x;
  for (int d = 1; degree(f) >= 2 * d; ++d) {
    h = R.powmod(h, R.m, f);
    IntPoly g = R.gcd(R.sub(h, x), f);
    if (degree(g) > 0) {
      auto parts = equal_degree_split(R, g, d, rng);
      out.insert(out.end(), parts.begin(), parts.end());
      IntPoly q, r;
      R.divmod(f, g, q, r);
      f = q;
      h = R.rem(h, f);
    }
  }
  if (degree(f) > 0) out.push_back(R.monic(f));
  return out;
}

// Lifts f = g*h (mod p), monic g, h, to modulus p^k.
void hensel_pair(const IntPoly& f, IntPoly& g, IntPoly& h, const BigInt& p, int k) {
  ModRing Rp{p};
  IntPoly s, t;
  Rp.bezout(g, h, s, t);
  BigInt pj = p;
  for (int j = 1; j < k; ++j) {
    ModRing Rnext{pj * p};
    // e = (f - g h) / p^j, computed exactly over Z.
    IntPoly gh(g.size() + h.size() - 1, BigInt(0));
    for (size_t a = 0; a < g.size(); ++a)
      for (size_t b = 0; b < h.size(); ++b) gh[a + b] += g[a] * h[b];
    IntPoly e(std::max(f.size(), gh.size()), BigInt(0));
    for (size_t i = 0; i < f.size(); ++i) e[i] += f[i];
    for (size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    for (auto& c : e) c /= pj;
    e = Rp.reduce(e);
    IntPoly b = Rp.rem(Rp.mul(t, e), g);
    IntPoly a = Rp.rem(Rp.mul(s, e), h);
    g = Rnext.add(g, Rnext.scale(b, pj));
    h = Rnext.add(h, Rnext.scale(a, pj));
    pj *= p;
  }
}

std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<IntPoly>& factors, const BigInt& p, int k) {
  if (factors.size() == 1) {
    BigInt pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    return {ModRing{pk}.reduce(f)};
  }
  ModRing Rp{p};
  IntPoly g = factors.front();
  IntPoly h{1};
  for (size_t i = 1; i < factors.size(); ++i) h = Rp.mul(h, factors[i]);
  hensel_pair(f, g, h, p, k);
  std::vector<IntPoly> rest(factors.begin() + 1, factors.end());
  auto lifted = hensel_lift(h, rest, p, k);
  lifted.insert(lifted.begin(), g);
  return lifted;
}

IntPoly symmetric(IntPoly f, const BigInt& m) {
  for (auto& c : f) {
    c = mod_floor(c, m);
    if (c * 2 > m) c -= m;
  }
  trim(f);
  return f;
}

// Exact division of monic integer polynomials; returns false if not divisible.
bool divides_exactly(const IntPoly& f, const IntPoly& g, IntPoly& quotient) {
  IntPoly r = f;
  quotient.assign(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, BigInt(0));
  while (!r.empty() && r.size() >= g.size()) {
    const size_t shift = r.size() - g.size();
    BigInt c = r.back();  // g is monic
    quotient[shift] = c;
    for (size_t i = 0; i < g.size(); ++i) r[shift + i] -= c * g[i];
    trim(r);
  }
  return r.empty();
}

}  // namespace

std::vector<IntPoly> factor_monic_integer(const IntPoly& input) {
  IntPoly f = input;
  trim(f);
  if (f.empty() || f.back() != 1) throw FactorizationError("polynomial is not monic");
  const int n = degree(f);
  if (n <= 1) return {f};

  // Small prime keeping f squarefree.
  BigInt p;
  std::vector<IntPoly> modp;
  for (long long q = 3;; q += 2) {
    if (!is_probable_small_prime(q)) continue;
    if (q > 1000) throw FactorizationError("no suitable prime found");
    ModRing R{BigInt(q)};
    IntPoly fp = R.reduce(f);
    IntPoly df;
    for (size_t i = 1; i < fp.size(); ++i) df.push_back(fp[i] * BigInt(static_cast<long long>(i)));
    df = R.reduce(df);
    if (df.empty() || degree(R.gcd(fp, df)) != 0) continue;
    p = q;
    modp = factor_mod_prime(R, fp);
    break;
  }
  if (modp.size() == 1) return {f};

  // Mignotte-style bound on factor coefficients: 2^n * ||f||_2.
  BigInt norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  BigInt bound = (BigInt(1) << n) * (mp::sqrt(norm2) + 1);
  int k = 1;
  BigInt pk = p;
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }
  std::vector<IntPoly> lifted = hensel_lift(f, modp, p, k);

  // Recombination over subsets of increasing size.
  std::vector<IntPoly> result;
  IntPoly rest = f;
  std::vector<IntPoly> pool = lifted;
  ModRing Rk{pk};
  for (size_t s = 1; 2 * s <= pool.size();) {
    bool found = false;
    std::vector<size_t> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      IntPoly g{1};
      for (size_t i : idx) g = Rk.mul(g, pool[i]);
      g = symmetric(g, pk);
      IntPoly q;
      if (divides_exactly(rest, g, q)) {
        result.push_back(g);
        rest = q;
        for (size_t i = s; i-- > 0;) pool.erase(pool.begin() + static_cast<long>(idx[i]));
        found = true;
        break;
      }
      // next combination
      size_t i = s;
      while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (degree(rest) > 0) result.push_back(rest);
  return result;
}

std::vector<RatPoly> factor_rational(const RatPoly& f) {
  RatPoly g = squarefree_part(f);
  const int n = degree(g);
  if (n > kMaxFactorDegree)
    throw FactorizationError("polynomial degree " + std::to_string(n) + " exceeds the factorization cap of 8");
  if (n <= 0) return {};
  if (n == 1) return {g};
  // d^n g(x/d) is monic and integral for d = lcm of denominators.
  BigInt d = 1;
  for (const auto& c : g) d = lcm_value(d, denominator_of(c));
  IntPoly F(static_cast<size_t>(n + 1));
  BigInt power = 1;
  for (int i = n; i >= 0; --i) {
    F[static_cast<size_t>(i)] = numerator_of(g[static_cast<size_t>(i)] * Rational(power));
    power *= d;
  }
  std::vector<RatPoly> out;
  for (const auto& G : factor_monic_integer(F)) {
    // G(d x) / d^deg G
    RatPoly h(G.size());
    BigInt pw = 1;
    for (size_t i = 0; i < G.size(); ++i) {
      h[i] = Rational(G[i]) * Rational(pw);
      pw *= d;
    }
    out.push_back(make_monic(h));
  }
  std::sort(out.begin(), out.end(), [](const RatPoly& a, const RatPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  return out;
}

RatMatrix evaluate(const RatPoly& f, const RatMatrix& x) {
  const Eigen::Index n = x.rows();
  RatMatrix acc = RatMatrix::Zero(n, n);
  for (size_t i = f.size(); i-- > 0;) {
    acc = acc * x;
    for (Eigen::Index j = 0; j < n; ++j) acc(j, j) += f[i];
  }
  return acc;
}

RatPoly minimal_polynomial(const RatMatrix& x) {
  const Eigen::Index n = x.rows();
  std::vector<RatMatrix> powers{RatMatrix::Identity(n, n)};
  for (Eigen::Index k = 1; k <= n; ++k) {
    powers.push_back(powers.back() * x);
    RatMatrix stacked(n * n, static_cast<Eigen::Index>(powers.size()));
    for (size_t j = 0; j < powers.size(); ++j)
      stacked.col(static_cast<Eigen::Index>(j)) = powers[j].reshaped();
    RatMatrix ns = rational_nullspace(stacked);
    if (ns.cols() == 0) continue;
    RatPoly f(powers.size());
    for (size_t j = 0; j < powers.size(); ++j) f[j] = ns(static_cast<Eigen::Index>(j), 0);
    trim(f);
    return make_monic(f);
  }
  throw FactorizationError("minimal polynomial not found");
}

}  // namespace toral
