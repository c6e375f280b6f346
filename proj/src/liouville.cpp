#include "umcert/liouville.hpp"

#include <fstream>
#include <sstream>

namespace umcert {

namespace {

unsigned long fact(int n) {
  unsigned long r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<unsigned long>(i);
  return r;
}

Integer ipow_ui(unsigned long base, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// num / (9 * 10^e) for num coprime to 30, without a gcd pass.
Rational over_nine_pow10(Integer num, unsigned long e) {
  return make_reduced_rational(std::move(num), 9 * pow10(e));
}

std::vector<unsigned long> prime_factors(unsigned long n) {
  std::vector<unsigned long> out;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Reduces num/den when every prime of den divides `primes_of`.
Rational reduce_smooth(Integer num, Integer den, unsigned long primes_of) {
  for (unsigned long p : prime_factors(primes_of)) {
    while (mpz_divisible_ui_p(num.get_mpz_t(), p) && mpz_divisible_ui_p(den.get_mpz_t(), p)) {
      mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), p);
      mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
    }
  }
  return make_reduced_rational(std::move(num), std::move(den));
}

// Smallest K >= 1 with base^((K+1)!) >= 10^digits.
int index_for_digits(int base, unsigned long digits) {
  unsigned long bits = 0;
  for (int b = base; b > 1; b >>= 1) ++bits;
  const unsigned long needed = (digits * 4 + bits - 1) / bits;
  int K = 1;
  while (fact(K + 1) < needed) ++K;
  return K;
}

}  // namespace

void TruncationLimits::validate_config() const {
  if (k_max < 1) throw Error("k_max must be at least 1");
  if (k_max > kDefaultKMax && !allow_large_k) {
    throw Error("k_max " + std::to_string(k_max) + " exceeds the default limit " +
                std::to_string(kDefaultKMax) + "; pass --allow-large-k to override");
  }
}

void TruncationLimits::validate(int k) const {
  validate_config();
  if (k < 1 || k > k_max) {
    throw Error("k = " + std::to_string(k) + " out of range 1.." + std::to_string(k_max));
  }
}

TruncationPoint truncation_point(int k) {
  if (k < 1) throw Error("truncation index must be >= 1");
  const unsigned long kf = fact(k);
  TruncationPoint t;
  t.p = 0;
  for (int j = 1; j <= k; ++j) t.p += pow10(kf - fact(j));
  t.q = pow10(kf);
  // p_k ends in the digit 1, so p_k/q_k is already reduced.
  t.alpha = make_reduced_rational(t.p, t.q);
  return t;
}

TruncationRecord truncation(int k, const TruncationLimits& limits) {
  limits.validate(k);
  TruncationPoint t = truncation_point(k);
  TruncationRecord r;
  r.k = k;
  r.p = std::move(t.p);
  r.q = std::move(t.q);
  r.alpha = std::move(t.alpha);
  const unsigned long f1 = fact(k + 1);
  const unsigned long f2 = fact(k + 2);
  const unsigned long f3 = fact(k + 3);
  r.tail_lo = make_reduced_rational(1, pow10(f1));
  // (9 10^(f3-f1-1) + 9 10^(f3-f2-1) + 1) / (9 10^(f3-1)); the numerator is
  // 1 mod 30.
  Integer num = 9 * pow10(f3 - f1 - 1) + 9 * pow10(f3 - f2 - 1) + 1;
  r.tail_hi = over_nine_pow10(std::move(num), f3 - 1);
  return r;
}

Enclosure liouville_tail_outer(int k, unsigned significant) {
  if (k < 1) throw Error("truncation index must be >= 1");
  const unsigned long f1 = fact(k + 1);
  const unsigned long f2 = fact(k + 2);
  if (f2 - f1 >= significant + 1) {
    // The two neglected pieces sum to at most 2 * 10^-(k+2)!.
    const Rational lo = make_reduced_rational(1, pow10(f1));
    const Rational hi = make_reduced_rational(pow10(significant) + 1, pow10(f1 + significant));
    return Enclosure(lo, hi);
  }
  // The lower end keeps the three known terms, so the width is set by the
  // remainder beyond 10^-(k+3)! rather than by 10^-(k+2)!.
  TruncationLimits unlimited{k, true};
  const TruncationRecord r = truncation(k, unlimited);
  const unsigned long f3 = fact(k + 3);
  const Rational lo = make_reduced_rational(pow10(f3 - f1) + pow10(f3 - f2) + 1, pow10(f3));
  return round_outward(Enclosure(lo, r.tail_hi), significant);
}

Eq2Result eq2_check(int k, const TruncationLimits& limits) {
  const TruncationRecord r = truncation(k, limits);
  Eq2Result out;
  out.gap = r.tail();
  const unsigned long e = fact(k) * static_cast<unsigned long>(k + 1);
  out.rhs = over_nine_pow10(Integer(1), e - 1);
  out.pass = r.tail_hi < out.rhs;
  return out;
}

Enclosure liouville_enclosure(int K) {
  if (K < 1) throw Error("precision level K must be >= 1");
  const TruncationPoint t = truncation_point(K);
  const unsigned long n = fact(K + 1);
  const unsigned long kf = fact(K);
  if (n - kf < 2) return Enclosure(t.alpha, t.alpha + Rational(10, 9) / Rational(pow10(n)));
  // S + 1/(9 10^(n-1)) = (9 p 10^(n-1-K!) + 1) / (9 10^(n-1)).
  Integer num = 9 * t.p * pow10(n - 1 - kf) + 1;
  return Enclosure(t.alpha, over_nine_pow10(std::move(num), n - 1));
}

EnclosureSource liouville_source() {
  CachedSource cache([](int level) {
    return liouville_enclosure(index_for_digits(10, precision_digits(level)));
  });
  return cache.as_source();
}

DigitLiouville::DigitLiouville(int base, Generator digits, int digit_bound, std::string name)
    : base_(base), digits_(std::move(digits)), bound_(digit_bound), name_(std::move(name)) {
  if (base_ < 2) throw Error("digit base must be >= 2");
  if (bound_ < 1 || bound_ > base_ - 1) throw Error("digit bound out of range");
  if (!digits_) throw Error("missing digit generator");
}

DigitLiouville DigitLiouville::ones(int base) {
  return DigitLiouville(base, [](std::size_t) { return 1; }, 1, "ones");
}

DigitLiouville DigitLiouville::alt12(int base) {
  if (base < 3) throw Error("alt12 needs base >= 3");
  return DigitLiouville(base, [](std::size_t j) { return j % 2 == 1 ? 1 : 2; }, 2, "alt12");
}

DigitLiouville DigitLiouville::preset(const std::string& name, int base) {
  if (name == "ones") return ones(base);
  if (name == "alt12") return alt12(base);
  throw Error("unknown digit preset '" + name + "' (expected ones or alt12)");
}

DigitLiouville DigitLiouville::parse(const std::string& text) {
  std::istringstream in(text);
  std::string head;
  if (!(in >> head) || head.rfind("base=", 0) != 0) {
    throw Error("digit file must start with base=<int>");
  }
  int base = 0;
  try {
    base = std::stoi(head.substr(5));
  } catch (const std::exception&) {
    throw Error("invalid base in digit file: " + head);
  }
  if (base < 2) throw Error("digit base must be >= 2");
  std::vector<int> digits;
  std::string tok;
  while (in >> tok) {
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(tok, &used);
      if (used != tok.size()) throw Error("");
    } catch (const std::exception&) {
      throw Error("invalid digit token '" + tok + "'");
    }
    if (v < 1 || v > base - 1) {
      throw Error("digit " + tok + " out of range 1.." + std::to_string(base - 1));
    }
    digits.push_back(v);
  }
  if (digits.empty()) throw Error("digit file lists no digits");
  int bound = 1;
  for (int v : digits) bound = std::max(bound, v);
  auto shared = std::make_shared<const std::vector<int>>(std::move(digits));
  return DigitLiouville(
      base, [shared](std::size_t j) { return (*shared)[(j - 1) % shared->size()]; }, bound,
      "file");
}

DigitLiouville DigitLiouville::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open digit file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

int DigitLiouville::digit(std::size_t j) const {
  if (j < 1) throw Error("digit index must be >= 1");
  const int v = digits_(j);
  if (v < 1 || v > bound_) {
    throw Error("digit a_" + std::to_string(j) + " = " + std::to_string(v) + " out of range");
  }
  return v;
}

namespace {

DigitTruncation digit_point(const DigitLiouville& d, int k) {
  const auto b = static_cast<unsigned long>(d.base());
  const unsigned long kf = fact(k);
  DigitTruncation out;
  out.k = k;
  out.q = ipow_ui(b, kf);
  out.p = 0;
  for (int j = 1; j <= k; ++j) out.p += d.digit(j) * ipow_ui(b, kf - fact(j));
  return out;
}

}  // namespace

DigitTruncation digit_truncation(const DigitLiouville& d, int k, const TruncationLimits& limits) {
  limits.validate(k);
  const auto b = static_cast<unsigned long>(d.base());
  DigitTruncation out = digit_point(d, k);

  const unsigned long f1 = fact(k + 1);
  const unsigned long f2 = fact(k + 2);
  const unsigned long f3 = fact(k + 3);
  const long a1 = d.digit(k + 1);
  const long a2 = d.digit(k + 2);
  const Rational lo = make_rational(a1, ipow_ui(b, f1));
  // Common denominator (b-1) b^f3.
  Integer num = a1 * (b - 1) * ipow_ui(b, f3 - f1) + a2 * (b - 1) * ipow_ui(b, f3 - f2) +
                Integer(static_cast<unsigned long>(d.digit_bound())) * b;
  Integer den = (b - 1) * ipow_ui(b, f3);
  out.tail = Enclosure(lo, reduce_smooth(std::move(num), std::move(den), b * (b - 1)));
  return out;
}

DigitTruncation digit_truncation_outer(const DigitLiouville& d, int k, const TruncationLimits& limits,
                                       unsigned significant) {
  limits.validate(k);
  const unsigned long f1 = fact(k + 1);
  const unsigned long f2 = fact(k + 2);
  if (f2 - f1 < significant + 2) return digit_truncation(d, k, limits);
  // a_{k+2} b^-(k+2)! plus the rest is below 2D b^-(k+2)! < b^-(f1+significant).
  const auto b = static_cast<unsigned long>(d.base());
  DigitTruncation out = digit_point(d, k);
  const long a1 = d.digit(k + 1);
  const Integer den = ipow_ui(b, f1 + significant);
  const Integer scale = ipow_ui(b, significant);
  out.tail = Enclosure(make_rational(a1 * scale, den), make_rational(a1 * scale + 1, den));
  return out;
}

Enclosure digit_enclosure(const DigitLiouville& d, int K) {
  if (K < 1) throw Error("precision level K must be >= 1");
  const auto b = static_cast<unsigned long>(d.base());
  const unsigned long kf = fact(K);
  Integer p = 0;
  for (int j = 1; j <= K; ++j) p += d.digit(j) * ipow_ui(b, kf - fact(j));
  const Integer q = ipow_ui(b, kf);
  const Rational lo = make_rational(p, q);
  // Remaining terms are at most D b^-(K+1)! b/(b-1).
  const unsigned long n = fact(K + 1);
  Integer num = p * (b - 1) * ipow_ui(b, n - kf) + Integer(static_cast<unsigned long>(d.digit_bound())) * b;
  Integer den = (b - 1) * ipow_ui(b, n);
  return Enclosure(lo, reduce_smooth(std::move(num), std::move(den), b * (b - 1)));
}

EnclosureSource digit_source(const DigitLiouville& d) {
  CachedSource cache([d](int level) {
    return digit_enclosure(d, index_for_digits(d.base(), precision_digits(level)));
  });
  return cache.as_source();
}

bool s_beta_check(const Integer& p, const Integer& q, int k, const EnclosureSource& beta,
                  int refine_cap) {
  if (q < 1) throw Error("s_beta_check: q must be >= 1");
  if (p < 1 || p > q) throw Error("s_beta_check: expected 1 <= p <= q");
  if (k < 1) throw Error("s_beta_check: k must be >= 1");
  const Rational approx = make_rational(p, q);
  const Rational bound = make_reduced_rational(1, ipow(q, static_cast<unsigned long>(k + 1)));
  for (int level = 0; level <= refine_cap; ++level) {
    const Enclosure gap = distance(beta(level), Enclosure::point(approx));
    if (gap.hi() < bound) return true;
    if (gap.lo() >= bound) return false;
  }
  throw InconclusiveError("s_beta_check: undecided after " + std::to_string(refine_cap) +
                          " refinement levels");
}

GrowthResult growth_check(const std::vector<Integer>& q, const Rational& c1, const Rational& c2,
                          int first_k) {
  if (q.size() < 2) throw Error("growth_check needs at least two terms");
  if (c1 <= 0 || c2 <= 0) throw Error("growth_check constants must be positive");
  if (first_k < 1) throw Error("growth_check: first index must be >= 1");
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    if (!(q[i] < q[i + 1])) throw Error("growth_check: sequence is not strictly increasing");
  }
  GrowthResult out;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    const auto k = static_cast<unsigned long>(first_k) + i;
    const Rational next(q[i + 1]);
    const bool lower_ok = c1 * Rational(q[i]) <= next;
    const bool upper_ok = next <= c2 * Rational(ipow(q[i], k + 1));
    if (!lower_ok || !upper_ok) out.witnesses.push_back(i);
  }
  out.pass = out.witnesses.empty();
  return out;
}

}  // namespace umcert
