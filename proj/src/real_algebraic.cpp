#include "umcert/real_algebraic.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <mutex>

namespace umcert {

namespace {

// R / content(R), keeping the sign of the leading coefficient.
IntPolynomial positive_content_part(const IntPolynomial& r) {
  const Integer g = content(r);
  if (g == 1) return r;
  std::vector<Integer> v(r.coeffs().begin(), r.coeffs().end());
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(v));
}

}  // namespace

SturmSequence::SturmSequence(const IntPolynomial& p) {
  if (p.degree() < 1) throw Error("Sturm sequence of a constant polynomial");
  chain_.push_back(positive_content_part(p));
  chain_.push_back(positive_content_part(p.derivative()));
  while (true) {
    const IntPolynomial& a = chain_[chain_.size() - 2];
    const IntPolynomial& b = chain_.back();
    if (b.degree() == 0) break;
    IntPolynomial r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    const int delta = a.degree() - b.degree() + 1;
    const bool lead_power_negative = b.leading() < 0 && delta % 2 == 1;
    r = positive_content_part(r);
    // S_{i+1} = -rem(S_{i-1}, S_i) and prem = lc^delta * rem.
    chain_.push_back(lead_power_negative ? r : -r);
  }
}

int SturmSequence::variations(const Rational& x) const {
  int count = 0;
  int last = 0;
  for (const auto& s : chain_) {
    const int v = s.sign_at(x);
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

int SturmSequence::count_roots(const Rational& a, const Rational& b) const {
  if (a >= b) return 0;
  return variations(a) - variations(b);
}

Integer cauchy_root_bound(const IntPolynomial& p) {
  if (p.degree() < 1) throw Error("root bound of a constant polynomial");
  Integer m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    const Integer& c = p.coeff(static_cast<std::size_t>(i));
    if (cmpabs(c, m) > 0) m = ::abs(c);
  }
  return 1 + ceil_div(m, ::abs(p.leading()));
}

namespace {

// Point strictly inside (a, b) where p does not vanish.
Rational split_point(const IntPolynomial& p, const Rational& a, const Rational& b) {
  Rational mid = (a + b) / 2;
  Rational offset = (b - a) / 4;
  while (p.sign_at(mid) == 0) {
    mid += offset;
    offset /= 2;
  }
  return mid;
}

Enclosure bisect_once(const IntPolynomial& p, const Enclosure& e) {
  const int sa = p.sign_at(e.lo());
  const Rational mid = e.midpoint();
  const int sm = p.sign_at(mid);
  if (sm == 0) return Enclosure::point(mid);
  return sm == sa ? Enclosure(mid, e.hi()) : Enclosure(e.lo(), mid);
}

}  // namespace

std::vector<Enclosure> isolate_real_roots(const IntPolynomial& p) {
  if (p.degree() < 1) throw Error("isolate_real_roots: constant polynomial");
  if (!is_squarefree(p)) throw Error("isolate_real_roots: polynomial is not squarefree");
  if (p.degree() == 1) {
    return {Enclosure::point(make_rational(-p.coeff(0), p.coeff(1)))};
  }
  const SturmSequence sturm(p);
  const Rational bound(cauchy_root_bound(p));

  std::vector<Enclosure> found;
  struct Pending {
    Rational a, b;
    int count;
  };
  std::vector<Pending> stack{{-bound, bound, sturm.count_roots(-bound, bound)}};
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    if (cur.count == 0) continue;
    if (cur.count == 1) {
      found.emplace_back(cur.a, cur.b);
      continue;
    }
    const Rational mid = split_point(p, cur.a, cur.b);
    const int left = sturm.count_roots(cur.a, mid);
    // Push right first so the left half is processed first.
    stack.push_back({mid, cur.b, cur.count - left});
    stack.push_back({cur.a, mid, left});
  }

  // Neighbours may share an endpoint; shrink until strictly separated.
  for (std::size_t i = 0; i + 1 < found.size(); ++i) {
    while (!(found[i].hi() < found[i + 1].lo())) {
      found[i] = bisect_once(p, found[i]);
      found[i + 1] = bisect_once(p, found[i + 1]);
    }
  }
  return found;
}

namespace {

// floor(-log2(x)) up to one, for x > 0.
long neg_log2(const Rational& x) {
  return static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2));
}

Rational dyadic_floor(const Rational& x, long bits) {
  Integer num = x.get_num();
  num <<= static_cast<mp_bitcnt_t>(bits);
  Integer den = 1;
  den <<= static_cast<mp_bitcnt_t>(bits);
  return make_rational(floor_div(num, x.get_den()), den);
}

// One Newton step from the midpoint, accepted only if a sign change
// survives in a window of radius about width^2 around the new point.
std::optional<Enclosure> newton_narrow(const IntPolynomial& p, const IntPolynomial& dp,
                                       const Rational& lo, const Rational& hi, int sa,
                                       const Rational& target_width) {
  const Rational mid = (lo + hi) / 2;
  const Rational slope = dp(mid);
  if (slope == 0) return std::nullopt;
  const Rational x = mid - p(mid) / slope;
  if (x < lo || x > hi) return std::nullopt;
  const long e = neg_log2(hi - lo);
  const long r = std::min(2 * e, neg_log2(target_width) + 2);
  if (r <= e + 1) return std::nullopt;
  Rational radius = 1;
  mpz_mul_2exp(radius.get_den_mpz_t(), radius.get_den_mpz_t(), static_cast<mp_bitcnt_t>(r));
  const Rational xr = dyadic_floor(x, r + 2);
  const Rational a = std::max(lo, Rational(xr - radius));
  const Rational b = std::min(hi, Rational(xr + radius));
  const int s_a = p.sign_at(a);
  if (s_a == 0) return Enclosure::point(a);
  const int s_b = p.sign_at(b);
  if (s_b == 0) return Enclosure::point(b);
  if (s_a != sa || s_b != -sa) return std::nullopt;
  return Enclosure(a, b);
}

}  // namespace

Enclosure refine(const IntPolynomial& p, const Enclosure& isolating, const Rational& target_width) {
  if (target_width <= 0) throw Error("refine: target width must be positive");
  if (isolating.is_point()) return isolating;
  const int sa = p.sign_at(isolating.lo());
  const int sb = p.sign_at(isolating.hi());
  if (sa == 0 || sb == 0 || sa == sb) throw Error("refine: enclosure has no sign change");
  Rational lo = isolating.lo();
  Rational hi = isolating.hi();
  const IntPolynomial dp = p.derivative();
  int plain_steps = 0;
  while (hi - lo > target_width) {
    if (plain_steps >= 4 && hi - lo < Rational(1, 16)) {
      plain_steps = 0;
      if (auto narrowed = newton_narrow(p, dp, lo, hi, sa, target_width)) {
        if (narrowed->is_point()) return *narrowed;
        lo = narrowed->lo();
        hi = narrowed->hi();
        plain_steps = 4;
        continue;
      }
    }
    Rational mid = (lo + hi) / 2;
    const int sm = p.sign_at(mid);
    if (sm == 0) return Enclosure::point(mid);
    if (sm == sa) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
    ++plain_steps;
  }
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure refine(const RealAlgebraic& a, const Rational& target_width) {
  return refine(a.minpoly(), a.isolating(), target_width);
}

RealAlgebraic RealAlgebraic::from_rational(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  IntPolynomial p(std::vector<Integer>{-r.get_num(), r.get_den()});
  return RealAlgebraic(std::move(p), Enclosure::point(r));
}

RealAlgebraic RealAlgebraic::from_root_index(const IntPolynomial& poly, std::size_t index) {
  const IntPolynomial p = primitive_canonical(poly);
  if (p.degree() < 1) throw Error("minimal polynomial must be nonconstant");
  if (!is_irreducible(p)) throw Error("polynomial is reducible: " + p.to_string());
  const auto roots = isolate_real_roots(p);
  if (index >= roots.size()) {
    throw Error("root index " + std::to_string(index) + " out of range: " + p.to_string() +
                " has " + std::to_string(roots.size()) + " real roots");
  }
  return RealAlgebraic(p, roots[index]);
}

RealAlgebraic RealAlgebraic::make(const IntPolynomial& poly, const Enclosure& isolating) {
  if (!is_canonical(poly)) throw Error("minimal polynomial is not canonical: " + poly.to_string());
  if (poly.degree() < 1) throw Error("minimal polynomial must be nonconstant");
  if (!is_irreducible(poly)) throw Error("polynomial is reducible: " + poly.to_string());
  if (poly.degree() == 1) {
    const Rational r = make_rational(-poly.coeff(0), poly.coeff(1));
    if (!isolating.contains(r)) throw Error("enclosure does not contain the root");
    return RealAlgebraic(poly, Enclosure::point(r));
  }
  const SturmSequence sturm(poly);
  if (poly.sign_at(isolating.lo()) == 0 || poly.sign_at(isolating.hi()) == 0 ||
      sturm.count_roots(isolating.lo(), isolating.hi()) != 1) {
    throw Error("enclosure does not isolate exactly one root of " + poly.to_string());
  }
  return RealAlgebraic(poly, isolating);
}

RealAlgebraic RealAlgebraic::trusted(IntPolynomial minpoly, Enclosure isolating) {
  if (minpoly.degree() == 1) {
    const Rational r = make_rational(-minpoly.coeff(0), minpoly.coeff(1));
    if (!isolating.contains(r)) throw Error("enclosure does not contain the root");
    return RealAlgebraic(std::move(minpoly), Enclosure::point(r));
  }
  if (!isolating.is_point()) {
    const int sa = minpoly.sign_at(isolating.lo());
    const int sb = minpoly.sign_at(isolating.hi());
    if (sa == 0 || sb == 0 || sa == sb) throw Error("isolating enclosure has no sign change");
  }
  return RealAlgebraic(std::move(minpoly), std::move(isolating));
}

Rational RealAlgebraic::as_rational() const {
  if (!is_rational()) throw Error("not a rational number");
  return isolating_.lo();
}

int RealAlgebraic::sign() const {
  if (is_rational()) return sgn(isolating_.lo());
  Enclosure e = isolating_;
  while (!e.excludes_zero()) e = refine(minpoly_, e, e.width() / 4);
  return e.lo() > 0 ? 1 : -1;
}

std::size_t RealAlgebraic::root_index() const {
  if (is_rational()) return 0;
  const SturmSequence sturm(minpoly_);
  const Rational bound(cauchy_root_bound(minpoly_));
  return static_cast<std::size_t>(sturm.count_roots(-bound, isolating_.lo()));
}

RealAlgebraic RealAlgebraic::tightened(const Enclosure& narrower) const {
  if (!isolating_.contains(narrower)) throw Error("tightened enclosure is not nested");
  return trusted(minpoly_, narrower);
}

bool same_number(const RealAlgebraic& a, const RealAlgebraic& b) {
  if (a.minpoly_ != b.minpoly_) return false;
  if (a.is_rational()) return true;
  if (disjoint(a.isolating_, b.isolating_)) return false;
  return a.root_index() == b.root_index();
}

EnclosureSource algebraic_source(const RealAlgebraic& a) {
  struct State {
    IntPolynomial p;
    Enclosure current;
    std::mutex mutex;
  };
  auto state = std::make_shared<State>();
  state->p = a.minpoly();
  state->current = a.isolating();
  return [state](int level) {
    const Rational width = make_rational(1, pow10(precision_digits(level)));
    std::lock_guard lock(state->mutex);
    if (state->current.width() > width) state->current = refine(state->p, state->current, width);
    return state->current;
  };
}

}  // namespace umcert
