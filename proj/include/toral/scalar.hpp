#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

// Boost 1.74 probes every constructor argument for a byte-container
// const_iterator; Eigen expressions declare it as void.
namespace boost::multiprecision::detail {
template <class C>
  requires std::is_void_v<typename C::const_iterator>
struct is_byte_container<C> : std::false_type {};
}  // namespace boost::multiprecision::detail

#include <boost/multiprecision/eigen.hpp>

namespace toral {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

// Floor division and non-negative remainder for any signed integer scalar.
template <class Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

template <class Scalar>
Scalar mod_floor(const Scalar& a, const Scalar& b) {
  Scalar r = a % b;
  if (r < 0) r += (b < 0 ? Scalar(-b) : b);
  return r;
}

template <class Scalar>
Scalar abs_value(const Scalar& a) {
  return a < 0 ? Scalar(-a) : a;
}

template <class Scalar>
Scalar gcd_value(Scalar a, Scalar b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    Scalar t = a % b;
    a = b;
    b = t;
  }
  return a;
}

template <class Scalar>
Scalar lcm_value(const Scalar& a, const Scalar& b) {
  if (a == 0 || b == 0) return Scalar(0);
  return abs_value(Scalar(a / gcd_value(a, b) * b));
}

// Extended gcd: returns g = gcd(a,b) >= 0 with s*a + t*b = g.
template <class Scalar>
Scalar ext_gcd(const Scalar& a, const Scalar& b, Scalar& s, Scalar& t) {
  Scalar r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Scalar q = floor_div(r0, r1);
    Scalar r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Scalar s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    Scalar t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return r0;
}

inline std::string to_string(const BigInt& x) { return x.str(); }
inline std::string to_string(const Rational& x) { return x.str(); }

inline BigInt numerator_of(const Rational& q) { return BigInt(mp::numerator(q)); }
inline BigInt denominator_of(const Rational& q) { return BigInt(mp::denominator(q)); }

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long long>> rows) {
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc = nr ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  IntMatrix m(nr, nc);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long long v : row) m(i, j++) = BigInt(v);
    ++i;
  }
  return m;
}

inline IntVector int_vector(std::initializer_list<long long> values) {
  IntVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (long long x : values) v(i++) = BigInt(x);
  return v;
}

inline IntMatrix identity_matrix(Eigen::Index n) {
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline IntMatrix zero_matrix(Eigen::Index r, Eigen::Index c) { return IntMatrix::Zero(r, c); }

inline RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

// Lexicographic comparison used for canonical ordering of matrices.
template <class Scalar>
int compare_matrices(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
  if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j) ? -1 : 1;
  return 0;
}

std::string format_matrix(const IntMatrix& m);

}  // namespace toral
