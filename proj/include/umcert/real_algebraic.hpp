#pragma once

#include <vector>

#include "umcert/enclosure.hpp"
#include "umcert/polynomial.hpp"

namespace umcert {

// Sturm chain of a squarefree polynomial; negated primitive pseudo-remainders
// with signs corrected so the chain is a true Sturm sequence.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPolynomial& p);
  int variations(const Rational& x) const;
  // Number of distinct real roots in the half-open interval (a, b].
  int count_roots(const Rational& a, const Rational& b) const;
  const std::vector<IntPolynomial>& chain() const { return chain_; }

 private:
  std::vector<IntPolynomial> chain_;
};

// 1 + ceil(max |c_i| / |c_n|): every real root lies strictly inside (-B, B).
Integer cauchy_root_bound(const IntPolynomial& p);

// One enclosure per real root, ascending and pairwise disjoint. Endpoints of
// non-degenerate enclosures are never roots; a degree-1 input yields the
// exact root as a point enclosure. Throws for non-squarefree input.
std::vector<Enclosure> isolate_real_roots(const IntPolynomial& p);

// A real algebraic number: canonical irreducible minimal polynomial plus an
// enclosure holding exactly one of its real roots. Rational numbers carry a
// point enclosure.
class RealAlgebraic {
 public:
  static RealAlgebraic from_rational(const Rational& r);
  // The index-th real root (ascending) of an irreducible polynomial.
  static RealAlgebraic from_root_index(const IntPolynomial& poly, std::size_t index);
  // Validates canonical form, irreducibility and the one-root condition.
  static RealAlgebraic make(const IntPolynomial& poly, const Enclosure& isolating);
  // For callers that already established the invariants (enumeration,
  // transforms with an inverse check). Still checks the sign change.
  static RealAlgebraic trusted(IntPolynomial minpoly, Enclosure isolating);

  const IntPolynomial& minpoly() const { return minpoly_; }
  const Enclosure& isolating() const { return isolating_; }
  int degree() const { return minpoly_.degree(); }
  Integer height() const { return umcert::height(minpoly_); }
  bool is_rational() const { return degree() == 1; }
  Rational as_rational() const;
  bool is_zero() const { return is_rational() && minpoly_.coeff(0) == 0; }
  // -1, 0 or 1.
  int sign() const;
  // Position among the ascending real roots of the minimal polynomial.
  std::size_t root_index() const;

  // Same number with a narrower isolating enclosure.
  RealAlgebraic tightened(const Enclosure& narrower) const;

  friend bool same_number(const RealAlgebraic& a, const RealAlgebraic& b);

 private:
  RealAlgebraic(IntPolynomial minpoly, Enclosure isolating)
      : minpoly_(std::move(minpoly)), isolating_(std::move(isolating)) {}

  IntPolynomial minpoly_;
  Enclosure isolating_;
};

// Nested sub-enclosure of `isolating` of width <= target_width holding the
// same root of p; bisection on the sign of p at dyadic-friendly midpoints.
// `isolating` must hold exactly one simple root with a sign change across it
// (or be a point enclosure of a root).
Enclosure refine(const IntPolynomial& p, const Enclosure& isolating, const Rational& target_width);
Enclosure refine(const RealAlgebraic& a, const Rational& target_width);

// Source presenting `a` at precision_digits(level) decimal digits.
EnclosureSource algebraic_source(const RealAlgebraic& a);

}  // namespace umcert
