#pragma once

#include "umcert/real_algebraic.hpp"

namespace umcert {

// Q1(x) = a^m P(b x / a): coefficient j is a_j b^j a^(m-j). A root r of P
// maps to (a/b) r.
IntPolynomial scale_poly(const IntPolynomial& p, const Integer& a, const Integer& b);

// Q2(x) = b^m P(x - a/b): coefficient i is
// sum_{j>=i} a_j C(j, i) (-a)^(j-i) b^(m-j+i). A root r of P maps to r + a/b.
IntPolynomial shift_poly(const IntPolynomial& p, const Integer& a, const Integer& b);

struct TransformHeightReport {
  IntPolynomial q1;
  IntPolynomial q2;
  Integer h_p;
  Integer h_q1;
  Integer h_q2;
  Integer bound_i;   // max(|a|,|b|)^m H(P)
  Integer bound_ii;  // 2^(m+1) max(|a|,|b|)^m H(P)
  bool pass_i = false;
  bool pass_ii = false;
};

TransformHeightReport lemma1_check(const IntPolynomial& p, const Integer& a, const Integer& b);

// Minimal polynomial and isolating enclosure of r * alpha (r != 0) and of
// alpha + r. The result is re-canonicalized and checked by mapping it back
// through the inverse transform.
RealAlgebraic minpoly_scale(const RealAlgebraic& alpha, const Rational& r);
RealAlgebraic minpoly_shift(const RealAlgebraic& alpha, const Rational& r);

// Exact rational lower bound for the separation bound between distinct
// nonzero algebraic numbers of degrees n and m and heights h_alpha, h_beta:
//   (n+1)^(-m/2) (m+1)^(-n/2)
//     * max{2^-n (n+1)^(-(m-1)/2), 2^-m (m+1)^(-(n-1)/2)}
//     * h_alpha^-m h_beta^-n.
// Each branch collapses to 2^-t / sqrt(N) for an integer N; the square root
// is rounded up with relative error below 2^-48 (exact when N is a square).
Rational separation_lower_bound(int n, int m, const Integer& h_alpha, const Integer& h_beta);

struct SeparationResult {
  Rational bound;
  Enclosure distance;
  bool pass = false;
};

// Refines both numbers until the distance enclosure decides
// |alpha - beta| >= bound. Throws InconclusiveError after `refine_cap` rounds.
SeparationResult lemma2_check(const RealAlgebraic& alpha, const RealAlgebraic& beta,
                          int refine_cap = 48);

}  // namespace umcert
