#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "umcert/exact.hpp"

namespace umcert {

// Integer-coefficient univariate polynomial, coefficients in ascending
// degree order. Trailing zeros are stripped on construction, so the zero
// polynomial has an empty coefficient vector and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial constant(const Integer& c);
  // c * x^d
  static IntPolynomial monomial(const Integer& c, std::size_t d);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const Integer> coeffs() const { return coeffs_; }
  const Integer& coeff(std::size_t i) const;
  const Integer& leading() const;

  Rational operator()(const Rational& x) const;
  Integer operator()(const Integer& x) const;
  // Sign of p(x) computed by homogenized integer evaluation (no gcds).
  int sign_at(const Rational& x) const;

  IntPolynomial derivative() const;
  IntPolynomial operator-() const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const Integer& c, const IntPolynomial& p);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) = default;

  // Human-readable form, e.g. "5000*x^2 - 121".
  std::string to_string() const;

 private:
  void normalize();
  std::vector<Integer> coeffs_;
};

// Lexicographic order on the ascending coefficient sequence: shorter first,
// then coefficient by coefficient. Used for deterministic tie-breaking.
bool lex_less(const IntPolynomial& a, const IntPolynomial& b);

// "c0,c1,...,cm" <-> polynomial.
IntPolynomial parse_coeffs(std::string_view text);
std::string format_coeffs(const IntPolynomial& p, char sep = ',');

// Maximum absolute coefficient. Throws for the zero polynomial.
Integer height(const IntPolynomial& p);
// gcd of the coefficients (positive). Throws for the zero polynomial.
Integer content(const IntPolynomial& p);
// p / content(p) with a positive leading coefficient.
IntPolynomial primitive_canonical(const IntPolynomial& p);
bool is_canonical(const IntPolynomial& p);

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed over Z.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);
// a / b when b divides a exactly in Z[x].
std::optional<IntPolynomial> exact_quotient(const IntPolynomial& a, const IntPolynomial& b);
// Primitive gcd with positive leading coefficient.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);
bool is_squarefree(const IntPolynomial& p);

// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const IntPolynomial& p);

// Irreducibility over Q for a nonconstant polynomial (content is ignored).
// Squarefree test, rational-root test, then a search for factors of degree
// 2..deg/2 whose existence is first screened by factorization patterns
// modulo small primes and then settled by a Mignotte-bounded Kronecker
// search over divisor tuples. Sized for small degree and coefficients
// up to roughly 10^6.
bool is_irreducible(const IntPolynomial& p);

// max over j of C(d, j) * ceil(||p||_2): coefficient bound for any degree-d
// factor of p in Z[x].
Integer mignotte_bound(const IntPolynomial& p, int d);

}  // namespace umcert
