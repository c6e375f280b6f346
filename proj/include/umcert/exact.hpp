#pragma once

// Arbitrary-precision integers and rationals (GMP), plus the small set of
// exact helpers the rest of the library is written against.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace umcert {

using Integer = mpz_class;
// mpq_class keeps numerator and denominator coprime with a positive
// denominator after every arithmetic operation.
using Rational = mpq_class;

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Interval refinement hit its cap before a comparison became decidable.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

enum class Verdict { pass, fail, inconclusive, outside_regime };

std::string_view to_string(Verdict v);

// Reduces num/den; den must be nonzero.
Rational make_rational(const Integer& num, const Integer& den);

// Builds num/den without a gcd pass. The caller guarantees gcd(num, den) = 1
// and den > 0. Used for the factorial-exponent tails where a gcd over
// millions of digits would dominate the run time.
Rational make_reduced_rational(Integer num, Integer den);

Integer pow10(unsigned long e);
Integer ipow(const Integer& base, unsigned long e);
Rational rpow(const Rational& base, long e);
Integer factorial(unsigned long n);

// floor(sqrt(n)) and floor(n^(1/k)) for n >= 0.
Integer isqrt(const Integer& n);
Integer iroot(const Integer& n, unsigned long k);
bool is_perfect_square(const Integer& n);

Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
Integer floor(const Rational& x);
Integer ceil(const Rational& x);
Rational abs(const Rational& x);

// Positive divisors of |n| in ascending order, by trial division.
// Throws Error when |n| exceeds `limit`.
std::vector<Integer> positive_divisors(const Integer& n,
                                       const Integer& limit = Integer("100000000000000"));

// Decimal serialization. Rationals are always written as "num/den".
std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

// Accepts "a", "a/b" or a plain decimal such as "-0.25".
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// Number of decimal digits of |n| (1 for n = 0), computed exactly.
std::size_t decimal_digits(const Integer& n);

// Short scientific rendering for human-facing summaries, e.g. "5.000e+11".
std::string scientific(const Integer& n, int significant = 4);
std::string scientific(const Rational& q, int significant = 4);

// Decimal rendering of q truncated toward zero after `places` fractional digits.
std::string fixed(const Rational& q, int places);

}  // namespace umcert
