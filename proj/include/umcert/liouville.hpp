#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "umcert/enclosure.hpp"

namespace umcert {

constexpr int kDefaultKMax = 8;

// Range guard for factorial-exponent indices. Values of k above the default
// limit need allow_large_k.
struct TruncationLimits {
  int k_max = kDefaultKMax;
  bool allow_large_k = false;

  void validate_config() const;
  void validate(int k) const;
};

struct TruncationRecord {
  int k = 0;
  Integer p;
  Integer q;
  Rational alpha;
  // [tail_lo, tail_hi] contains L - alpha.
  Rational tail_lo;
  Rational tail_hi;

  Enclosure tail() const { return Enclosure(tail_lo, tail_hi); }
};

// p_k / q_k with q_k = 10^(k!). The tail is
// [10^-(k+1)!, 10^-(k+1)! + 10^-(k+2)! + (10/9) 10^-(k+3)!].
TruncationRecord truncation(int k, const TruncationLimits& limits = {});

// p_k, q_k and alpha_k only; no tail, no range guard beyond k >= 1.
struct TruncationPoint {
  Integer p;
  Integer q;
  Rational alpha;
};
TruncationPoint truncation_point(int k);

// The tail of L - alpha_k widened outward to `significant` digits. Much
// cheaper than the exact tail once (k+3)! runs into millions of digits.
Enclosure liouville_tail_outer(int k, unsigned significant = 50);

struct Eq2Result {
  Enclosure gap;
  Rational rhs;
  bool pass = false;
};

// tail_hi < (10/9) q_k^-(k+1), exactly.
Eq2Result eq2_check(int k, const TruncationLimits& limits = {});

// [sum_{j<=K} 10^-j!, sum_{j<=K} 10^-j! + (10/9) 10^-(K+1)!].
Enclosure liouville_enclosure(int K);

// Enclosures of L at precision_digits(level).
EnclosureSource liouville_source();

// sum_j a_j base^-j! with 1 <= a_j <= base - 1. Digits come from an
// index-addressed generator, so any prefix can be replayed.
class DigitLiouville {
 public:
  using Generator = std::function<int(std::size_t)>;

  // digit_bound must dominate every digit; it drives the tail bound.
  DigitLiouville(int base, Generator digits, int digit_bound, std::string name);

  // All digits equal to 1; base 10 gives L.
  static DigitLiouville ones(int base = 10);
  // a_j = 1 for odd j, 2 for even j.
  static DigitLiouville alt12(int base = 10);
  static DigitLiouville preset(const std::string& name, int base = 10);

  // "base=<int>" followed by whitespace-separated digits. The listed
  // digits repeat cyclically.
  static DigitLiouville parse(const std::string& text);
  static DigitLiouville load(const std::string& path);

  int base() const { return base_; }
  int digit_bound() const { return bound_; }
  const std::string& name() const { return name_; }
  // 1-based; validates the range.
  int digit(std::size_t j) const;

 private:
  int base_;
  Generator digits_;
  int bound_;
  std::string name_;
};

struct DigitTruncation {
  int k = 0;
  Integer p;
  Integer q;
  Enclosure tail;
};

// q_k = base^(k!), p_k = q_k sum_{j<=k} a_j base^-j!. The tail is
// [a_{k+1} b^-(k+1)!, a_{k+1} b^-(k+1)! + a_{k+2} b^-(k+2)! + D b/(b-1) b^-(k+3)!]
// with D the digit bound.
DigitTruncation digit_truncation(const DigitLiouville& d, int k,
                                 const TruncationLimits& limits = {});

// Same p_k and q_k with the tail widened to `significant` base-b digits
// past b^-(k+1)!, avoiding the b^(k+3)! denominator.
DigitTruncation digit_truncation_outer(const DigitLiouville& d, int k,
                                       const TruncationLimits& limits = {}, unsigned significant = 50);

Enclosure digit_enclosure(const DigitLiouville& d, int K);
EnclosureSource digit_source(const DigitLiouville& d);

// |beta - p/q| < q^-(k+1), decided from enclosures of beta at increasing
// levels. Throws InconclusiveError if undecided after refine_cap levels.
bool s_beta_check(const Integer& p, const Integer& q, int k, const EnclosureSource& beta,
                  int refine_cap = 8);

struct GrowthResult {
  bool pass = false;
  // Positions i of failing pairs (q[i], q[i+1]).
  std::vector<std::size_t> witnesses;
};

// C1 q_k <= q_{k+1} <= C2 q_k^(k+1) for each consecutive pair, where the
// first element carries index first_k.
GrowthResult growth_check(const std::vector<Integer>& q, const Rational& c1, const Rational& c2,
                          int first_k = 1);

}  // namespace umcert
