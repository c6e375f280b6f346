#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "umcert/exact.hpp"
#include "umcert/polynomial.hpp"

namespace umcert {

// Closed interval [lo, hi] with exact rational endpoints, lo <= hi.
class Enclosure {
 public:
  Enclosure() = default;
  Enclosure(Rational lo, Rational hi);
  static Enclosure point(const Rational& x) { return Enclosure(x, x); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Enclosure& inner) const { return lo_ <= inner.lo_ && inner.hi_ <= hi_; }
  bool strictly_positive() const { return lo_ > 0; }
  bool strictly_negative() const { return hi_ < 0; }
  bool excludes_zero() const { return lo_ > 0 || hi_ < 0; }

  friend bool operator==(const Enclosure&, const Enclosure&) = default;

 private:
  Rational lo_{0};
  Rational hi_{0};
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Rational& c, const Enclosure& a);
// Requires b to exclude zero.
Enclosure operator/(const Enclosure& a, const Enclosure& b);
Enclosure abs(const Enclosure& a);
Enclosure pow(const Enclosure& a, unsigned long e);
Enclosure hull(const Enclosure& a, const Enclosure& b);
std::optional<Enclosure> intersect(const Enclosure& a, const Enclosure& b);
bool disjoint(const Enclosure& a, const Enclosure& b);
// Enclosure of |x - y| for x in a, y in b.
Enclosure distance(const Enclosure& a, const Enclosure& b);

// Interval Horner evaluation: contains {p(t) : t in x}.
Enclosure eval_enclosure(const IntPolynomial& p, const Enclosure& x);

// Widen to endpoints carrying `significant` decimal digits (lo rounded
// down, hi rounded up). Keeps enclosures through factorial-size exponents
// cheap without giving up containment.
Enclosure round_outward(const Enclosure& x, unsigned significant);

// Rigorous enclosure of log10(x) for x > 0, width about 2^-40.
Enclosure log10_enclosure(const Rational& x);
Enclosure log10_enclosure(const Integer& n);

// A real number presented through enclosures at increasing precision
// levels. Level l asks for roughly precision_digits(l) correct decimal
// digits; implementations may deliver more. Widths must tend to zero.
using EnclosureSource = std::function<Enclosure(int level)>;

inline unsigned long precision_digits(int level) {
  return 8ul << static_cast<unsigned>(level < 0 ? 0 : (level > 24 ? 24 : level));
}

// Thread-safe memo around an EnclosureSource. Copies share the memo.
class CachedSource {
 public:
  explicit CachedSource(EnclosureSource source);
  Enclosure at(int level) const;
  EnclosureSource as_source() const;

 private:
  struct State {
    EnclosureSource source;
    std::mutex mutex;
    std::vector<std::optional<Enclosure>> memo;
  };
  std::shared_ptr<State> state_;
};

}  // namespace umcert
