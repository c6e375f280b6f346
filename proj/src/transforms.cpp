#include "umcert/transforms.hpp"

#include <algorithm>

namespace umcert {

namespace {

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

void require_nonzero_poly(const IntPolynomial& p, const char* op) {
  if (p.is_zero()) throw Error(std::string(op) + ": zero polynomial");
}

// Cheap enough to re-run the full irreducibility test.
bool cheap_to_recheck(const IntPolynomial& p) {
  return p.degree() <= 8 && height(p) <= 1000000;
}

// Lower bound for 1/sqrt(n), exact when n is a perfect square.
Rational inverse_sqrt_lower(const Integer& n) {
  const Integer s = isqrt(n);
  if (s * s == n) return make_rational(1, s);
  Integer scale = 1;
  scale <<= 48;
  const Integer upper = isqrt(n * scale * scale) + 1;
  return make_rational(scale, upper);
}

}  // namespace

IntPolynomial scale_poly(const IntPolynomial& p, const Integer& a, const Integer& b) {
  require_nonzero_poly(p, "scale_poly");
  if (a == 0 || b == 0) throw Error("scale_poly: a and b must be nonzero");
  const auto m = static_cast<unsigned long>(p.degree());
  std::vector<Integer> c(m + 1);
  for (unsigned long j = 0; j <= m; ++j) c[j] = p.coeff(j) * ipow(b, j) * ipow(a, m - j);
  return IntPolynomial(std::move(c));
}

IntPolynomial shift_poly(const IntPolynomial& p, const Integer& a, const Integer& b) {
  require_nonzero_poly(p, "shift_poly");
  if (b == 0) throw Error("shift_poly: b must be nonzero");
  const auto m = static_cast<unsigned long>(p.degree());
  std::vector<Integer> neg_a_pow(m + 1), b_pow(m + 1);
  neg_a_pow[0] = 1;
  b_pow[0] = 1;
  for (unsigned long i = 1; i <= m; ++i) {
    neg_a_pow[i] = neg_a_pow[i - 1] * (-a);
    b_pow[i] = b_pow[i - 1] * b;
  }
  std::vector<Integer> c(m + 1, Integer(0));
  for (unsigned long i = 0; i <= m; ++i) {
    for (unsigned long j = i; j <= m; ++j) {
      if (p.coeff(j) == 0) continue;
      c[i] += p.coeff(j) * binomial(j, i) * neg_a_pow[j - i] * b_pow[m - j + i];
    }
  }
  return IntPolynomial(std::move(c));
}

TransformHeightReport lemma1_check(const IntPolynomial& p, const Integer& a, const Integer& b) {
  TransformHeightReport r;
  r.q1 = scale_poly(p, a, b);
  r.q2 = shift_poly(p, a, b);
  r.h_p = height(p);
  r.h_q1 = height(r.q1);
  r.h_q2 = height(r.q2);
  const auto m = static_cast<unsigned long>(p.degree());
  const Integer big = std::max(Integer(::abs(a)), Integer(::abs(b)));
  r.bound_i = ipow(big, m) * r.h_p;
  Integer two_pow = 1;
  two_pow <<= (m + 1);
  r.bound_ii = two_pow * r.bound_i;
  r.pass_i = r.h_q1 <= r.bound_i;
  r.pass_ii = r.h_q2 <= r.bound_ii;
  return r;
}

RealAlgebraic minpoly_scale(const RealAlgebraic& alpha, const Rational& r) {
  if (r == 0) throw Error("degenerate product: scaling by zero");
  if (r == 1) return alpha;
  const Integer& num = r.get_num();
  const Integer& den = r.get_den();
  IntPolynomial q = primitive_canonical(scale_poly(alpha.minpoly(), num, den));
  if (primitive_canonical(scale_poly(q, den, num)) != alpha.minpoly())
    throw Error("minpoly_scale: inverse transform does not recover the input");
  if (cheap_to_recheck(q) && !is_irreducible(q))
    throw Error("minpoly_scale: transformed polynomial is reducible");
  return RealAlgebraic::trusted(std::move(q), r * alpha.isolating());
}

RealAlgebraic minpoly_shift(const RealAlgebraic& alpha, const Rational& r) {
  if (r == 0) return alpha;
  const Integer& num = r.get_num();
  const Integer& den = r.get_den();
  IntPolynomial q = primitive_canonical(shift_poly(alpha.minpoly(), num, den));
  if (primitive_canonical(shift_poly(q, -num, den)) != alpha.minpoly())
    throw Error("minpoly_shift: inverse transform does not recover the input");
  if (cheap_to_recheck(q) && !is_irreducible(q))
    throw Error("minpoly_shift: transformed polynomial is reducible");
  return RealAlgebraic::trusted(std::move(q), alpha.isolating() + Enclosure::point(r));
}

Rational separation_lower_bound(int n, int m, const Integer& h_alpha, const Integer& h_beta) {
  if (n < 1 || m < 1) throw Error("separation_lower_bound: degrees must be >= 1");
  if (h_alpha < 1 || h_beta < 1) throw Error("separation_lower_bound: heights must be >= 1");
  const auto un = static_cast<unsigned long>(n);
  const auto um = static_cast<unsigned long>(m);
  const Integer n1(static_cast<unsigned long>(n + 1));
  const Integer m1(static_cast<unsigned long>(m + 1));
  // 2^-n / sqrt((n+1)^(2m-1) (m+1)^n) and 2^-m / sqrt((n+1)^m (m+1)^(2n-1)).
  const Rational first = inverse_sqrt_lower(ipow(n1, 2 * um - 1) * ipow(m1, un)) /
                         Rational(ipow(Integer(2), un));
  const Rational second = inverse_sqrt_lower(ipow(n1, um) * ipow(m1, 2 * un - 1)) /
                          Rational(ipow(Integer(2), um));
  const Rational constant = std::max(first, second);
  return constant / Rational(ipow(h_alpha, um) * ipow(h_beta, un));
}

SeparationResult lemma2_check(const RealAlgebraic& alpha, const RealAlgebraic& beta, int refine_cap) {
  if (alpha.is_zero() || beta.is_zero()) throw Error("lemma2_check: inputs must be nonzero");
  if (same_number(alpha, beta)) throw Error("lemma2_check: identical inputs");
  SeparationResult result;
  result.bound =
      separation_lower_bound(alpha.degree(), beta.degree(), alpha.height(), beta.height());
  Enclosure ea = alpha.isolating();
  Enclosure eb = beta.isolating();
  Rational width = result.bound / 4;
  for (int round = 0; round <= refine_cap; ++round) {
    ea = refine(alpha.minpoly(), ea, width);
    eb = refine(beta.minpoly(), eb, width);
    result.distance = distance(ea, eb);
    if (result.distance.lo() >= result.bound) {
      result.pass = true;
      return result;
    }
    if (result.distance.hi() < result.bound) {
      result.pass = false;
      return result;
    }
    width /= 16;
  }
  throw InconclusiveError("lemma2_check: refinement cap reached");
}

}  // namespace umcert
