#include "umcert/exact.hpp"

#include <algorithm>
#include <cctype>

namespace umcert {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::outside_regime: return "outside_regime";
  }
  return "?";
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_reduced_rational(Integer num, Integer den) {
  Rational q;
  mpz_swap(q.get_num_mpz_t(), num.get_mpz_t());
  mpz_swap(q.get_den_mpz_t(), den.get_mpz_t());
  return q;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational rpow(const Rational& base, long e) {
  if (e >= 0) {
    const auto u = static_cast<unsigned long>(e);
    return make_reduced_rational(ipow(base.get_num(), u), ipow(base.get_den(), u));
  }
  if (base == 0) throw Error("zero raised to a negative power");
  const auto u = static_cast<unsigned long>(-e);
  Integer num = ipow(base.get_den(), u);
  Integer den = ipow(base.get_num(), u);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return make_reduced_rational(std::move(num), std::move(den));
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw Error("isqrt of a negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer iroot(const Integer& n, unsigned long k) {
  if (n < 0) throw Error("iroot of a negative number");
  if (k == 0) throw Error("zeroth root");
  Integer r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer floor(const Rational& x) { return floor_div(x.get_num(), x.get_den()); }
Integer ceil(const Rational& x) { return ceil_div(x.get_num(), x.get_den()); }
Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

std::vector<Integer> positive_divisors(const Integer& n, const Integer& limit) {
  Integer m = ::abs(n);
  if (m == 0) throw Error("divisors of zero");
  if (m > limit) throw Error("integer too large for trial-division factoring: " + to_string(m));

  std::vector<std::pair<Integer, unsigned>> factors;
  auto take = [&](const Integer& p) {
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e > 0) factors.emplace_back(p, e);
  };
  take(2);
  take(3);
  for (Integer p = 5; p * p <= m; p += 6) {
    take(p);
    Integer p2 = p + 2;
    take(p2);
  }
  if (m > 1) factors.emplace_back(m, 1);

  std::vector<Integer> divisors{1};
  for (const auto& [p, e] : factors) {
    const std::size_t count = divisors.size();
    Integer power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= p;
      for (std::size_t j = 0; j < count; ++j) divisors.push_back(divisors[j] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Integer n;
  if (s.empty() || n.set_str(s, 10) != 0) throw Error("not an integer: '" + std::string(text) + "'");
  return n;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    return make_rational(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const auto places = static_cast<unsigned long>(s.size() - dot - 1);
    if (digits.empty() || digits == "-" || digits == "+")
      throw Error("not a number: '" + std::string(text) + "'");
    return make_rational(parse_integer(digits), pow10(places));
  }
  return Rational(parse_integer(s));
}

std::size_t decimal_digits(const Integer& n) {
  Integer m = ::abs(n);
  if (m == 0) return 1;
  // mpz_sizeinbase may overshoot by one.
  std::size_t d = mpz_sizeinbase(m.get_mpz_t(), 10);
  // m >= 2^(bits-1) settles most cases without building 10^(d-1).
  const auto bits = static_cast<long double>(mpz_sizeinbase(m.get_mpz_t(), 2));
  if ((bits - 1) * 0.30102999566398119521L > static_cast<long double>(d - 1) + 1e-6L) return d;
  if (m < pow10(d - 1)) --d;
  return d;
}

std::string scientific(const Integer& n, int significant) {
  if (n == 0) return "0";
  const bool negative = n < 0;
  Integer m = ::abs(n);
  const std::size_t digits = decimal_digits(m);
  const auto keep = static_cast<std::size_t>(std::max(significant, 1));
  std::string mantissa;
  if (digits > keep) {
    mantissa = Integer(m / pow10(digits - keep)).get_str();
  } else {
    mantissa = m.get_str();
    mantissa.append(keep - digits, '0');
  }
  std::string out = negative ? "-" : "";
  out += mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  out += "e+" + std::to_string(digits - 1);
  return out;
}

std::string scientific(const Rational& q, int significant) {
  if (q == 0) return "0";
  const bool negative = q < 0;
  Rational m = abs(q);
  // Find e with 10^e <= m < 10^(e+1).
  long e = static_cast<long>(decimal_digits(m.get_num())) -
           static_cast<long>(decimal_digits(m.get_den()));
  auto scaled = [&](long shift) { return shift >= 0 ? Rational(m / Rational(pow10(shift)))
                                                    : Rational(m * Rational(pow10(-shift))); };
  while (scaled(e) < 1) --e;
  while (scaled(e) >= 10) ++e;
  const Integer lead =
      floor(scaled(e) * Rational(pow10(static_cast<unsigned long>(std::max(significant - 1, 0)))));
  std::string s = lead.get_str();
  std::string out = negative ? "-" : "";
  out += s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
  return out;
}

std::string fixed(const Rational& q, int places) {
  const Rational scaled = abs(q) * Rational(pow10(static_cast<unsigned long>(places)));
  std::string digits = floor(scaled).get_str();
  if (digits.size() <= static_cast<std::size_t>(places))
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  std::string out = q < 0 ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(places));
  return out;
}

}  // namespace umcert
