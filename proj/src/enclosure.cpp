#include "umcert/enclosure.hpp"

#include <algorithm>

namespace umcert {

Enclosure::Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw Error("enclosure with lo > hi");
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo() + b.lo(), a.hi() + b.hi());
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo() - b.hi(), a.hi() - b.lo());
}

Enclosure operator-(const Enclosure& a) { return Enclosure(-a.hi(), -a.lo()); }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  if (a.lo() >= 0 && b.lo() >= 0) return Enclosure(a.lo() * b.lo(), a.hi() * b.hi());
  const Rational p[4] = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
  const auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return Enclosure(*mn, *mx);
}

Enclosure operator*(const Rational& c, const Enclosure& a) {
  return c >= 0 ? Enclosure(c * a.lo(), c * a.hi()) : Enclosure(c * a.hi(), c * a.lo());
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (!b.excludes_zero()) throw Error("division by an enclosure containing zero");
  return a * Enclosure(1 / b.hi(), 1 / b.lo());
}

Enclosure abs(const Enclosure& a) {
  if (a.lo() >= 0) return a;
  if (a.hi() <= 0) return -a;
  return Enclosure(0, std::max(Rational(-a.lo()), a.hi()));
}

Enclosure pow(const Enclosure& a, unsigned long e) {
  if (e == 0) return Enclosure::point(1);
  const auto up = [e](const Rational& x) { return rpow(x, static_cast<long>(e)); };
  if (a.lo() >= 0) return Enclosure(up(a.lo()), up(a.hi()));
  if (a.hi() <= 0) {
    return e % 2 == 0 ? Enclosure(up(a.hi()), up(a.lo())) : Enclosure(up(a.lo()), up(a.hi()));
  }
  if (e % 2 == 1) return Enclosure(up(a.lo()), up(a.hi()));
  return Enclosure(0, std::max(up(a.lo()), up(a.hi())));
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

std::optional<Enclosure> intersect(const Enclosure& a, const Enclosure& b) {
  Rational lo = std::max(a.lo(), b.lo());
  Rational hi = std::min(a.hi(), b.hi());
  if (lo > hi) return std::nullopt;
  return Enclosure(std::move(lo), std::move(hi));
}

bool disjoint(const Enclosure& a, const Enclosure& b) { return a.hi() < b.lo() || b.hi() < a.lo(); }

Enclosure distance(const Enclosure& a, const Enclosure& b) { return abs(a - b); }

Enclosure eval_enclosure(const IntPolynomial& p, const Enclosure& x) {
  if (p.is_zero()) return Enclosure::point(0);
  const auto c = p.coeffs();
  Enclosure acc = Enclosure::point(Rational(c.back()));
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x + Enclosure::point(Rational(c[i]));
  return acc;
}

namespace {

// floor(log10|x|) up to an error of one, from digit counts alone.
long rough_exponent(const Rational& x) {
  return static_cast<long>(decimal_digits(x.get_num())) -
         static_cast<long>(decimal_digits(x.get_den()));
}

Rational round_to_decimal_grid(const Rational& x, long shift, bool up) {
  // Grid spacing 10^-shift.
  Integer scaled;
  if (shift >= 0) {
    const Integer num = x.get_num() * pow10(static_cast<unsigned long>(shift));
    scaled = up ? ceil_div(num, x.get_den()) : floor_div(num, x.get_den());
    return make_rational(scaled, pow10(static_cast<unsigned long>(shift)));
  }
  const Integer den = x.get_den() * pow10(static_cast<unsigned long>(-shift));
  scaled = up ? ceil_div(x.get_num(), den) : floor_div(x.get_num(), den);
  return Rational(scaled * pow10(static_cast<unsigned long>(-shift)));
}

Rational round_dyadic(const Rational& x, unsigned bits, bool up) {
  Integer num = x.get_num();
  num <<= bits;
  const Integer q = up ? ceil_div(num, x.get_den()) : floor_div(num, x.get_den());
  Integer den = 1;
  den <<= bits;
  return make_rational(q, den);
}

// log10(y) for y in [ylo, yhi] subset of [1, 10], one bit per squaring.
Enclosure log10_mantissa(Rational ylo, Rational yhi) {
  constexpr unsigned kBits = 160;
  constexpr int kSteps = 40;
  const Rational ten(10);
  Rational sum = 0;
  Rational step(1, 2);
  for (int i = 0; i < kSteps; ++i) {
    ylo = round_dyadic(ylo * ylo, kBits, false);
    yhi = round_dyadic(yhi * yhi, kBits, true);
    if (ylo >= ten) {
      sum += step;
      ylo /= ten;
      yhi /= ten;
    } else if (yhi >= ten) {
      return Enclosure(sum, sum + 2 * step);
    }
    if (yhi > ten) yhi = ten;
    step /= 2;
  }
  return Enclosure(sum, sum + 2 * step);
}

}  // namespace

Enclosure round_outward(const Enclosure& x, unsigned significant) {
  auto round_one = [significant](const Rational& r, bool up) -> Rational {
    if (r == 0) return r;
    const long shift = static_cast<long>(significant) - rough_exponent(abs(r));
    return round_to_decimal_grid(r, shift, up);
  };
  return Enclosure(round_one(x.lo(), false), round_one(x.hi(), true));
}

Enclosure log10_enclosure(const Integer& n) {
  if (n <= 0) throw Error("log10 of a non-positive integer");
  constexpr long kMantissa = 30;
  const long e = static_cast<long>(decimal_digits(n)) - 1;
  const Integer scale = pow10(static_cast<unsigned long>(kMantissa));
  Enclosure mantissa;
  if (e <= kMantissa) {
    const Rational y = make_rational(n, pow10(static_cast<unsigned long>(e)));
    mantissa = log10_mantissa(y, y);
  } else {
    const Integer t = n / pow10(static_cast<unsigned long>(e - kMantissa));
    mantissa = log10_mantissa(make_rational(t, scale), make_rational(t + 1, scale));
  }
  return Enclosure::point(Rational(e)) + mantissa;
}

Enclosure log10_enclosure(const Rational& x) {
  if (x <= 0) throw Error("log10 of a non-positive rational");
  return log10_enclosure(x.get_num()) - log10_enclosure(x.get_den());
}

CachedSource::CachedSource(EnclosureSource source) : state_(std::make_shared<State>()) {
  state_->source = std::move(source);
}

Enclosure CachedSource::at(int level) const {
  if (level < 0) level = 0;
  std::lock_guard lock(state_->mutex);
  auto& memo = state_->memo;
  const auto idx = static_cast<std::size_t>(level);
  if (memo.size() <= idx) memo.resize(idx + 1);
  if (!memo[idx]) memo[idx] = state_->source(level);
  return *memo[idx];
}

EnclosureSource CachedSource::as_source() const {
  return [self = *this](int level) { return self.at(level); };
}

}  // namespace umcert
