#pragma once

#include "toral/scalar.hpp"

#include <stdexcept>
#include <vector>

namespace toral {

// Dense univariate polynomials, coefficients in ascending degree; the zero
// polynomial is the empty vector.
using IntPoly = std::vector<BigInt>;
using RatPoly = std::vector<Rational>;

class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kMaxFactorDegree = 8;

int degree(const IntPoly& f);
int degree(const RatPoly& f);
void trim(IntPoly& f);
void trim(RatPoly& f);

RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_sub(const RatPoly& a, const RatPoly& b);
void poly_divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
RatPoly poly_gcd(RatPoly a, RatPoly b);  // monic
RatPoly derivative(const RatPoly& f);
RatPoly make_monic(const RatPoly& f);
RatPoly squarefree_part(const RatPoly& f);  // monic

// Irreducible monic factors over Q of a nonzero polynomial, each listed once,
// in canonical order (by degree, then coefficients). Throws when deg f exceeds
// kMaxFactorDegree.
std::vector<RatPoly> factor_rational(const RatPoly& f);

// Factorization of a monic squarefree integer polynomial into monic
// irreducibles: factoring modulo a small prime, Hensel lifting, recombination.
std::vector<IntPoly> factor_monic_integer(const IntPoly& f);

// Evaluate a polynomial at a square rational matrix (Horner).
RatMatrix evaluate(const RatPoly& f, const RatMatrix& x);
// Minimal polynomial of a square rational matrix (monic).
RatPoly minimal_polynomial(const RatMatrix& x);

}  // namespace toral
