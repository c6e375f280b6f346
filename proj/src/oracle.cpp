#include "umcert/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "detail/parallel.hpp"

namespace umcert {

namespace {

// The degree-1 sweep visits a few numerators per denominator, so its cost is
// counted in denominators rather than polynomials.
void check_spec(const EnumerationSpec& spec, bool linear_sweep = false) {
  if (spec.degree < 1) throw Error("enumeration degree must be >= 1");
  if (spec.height_max < 1) throw Error("enumeration height must be >= 1");
  const Integer count = linear_sweep ? spec.height_max : candidate_count(spec);
  if (count > Integer(static_cast<unsigned long>(spec.candidate_cap))) {
    throw Error("candidate cap exceeded: about " + scientific(count, 3) +
                " polynomials for degree " + std::to_string(spec.degree) + " and height " +
                to_string(spec.height_max) + " (cap " + std::to_string(spec.candidate_cap) + ")");
  }
}

void emit_linear(long a1, long h, bool dedupe, std::vector<RealAlgebraic>& out) {
  for (long a0 = -h; a0 <= h; ++a0) {
    if (dedupe && std::gcd(a0 < 0 ? -a0 : a0, a1) != 1) continue;
    out.push_back(RealAlgebraic::from_rational(Rational(-a0, a1)));
  }
}

// Quadratics: irreducible iff the discriminant is not a square, and the
// roots sit strictly between the integer square-root bounds.
void emit_quadratic(long a2, long h, bool dedupe, std::vector<RealAlgebraic>& out) {
  for (long a0 = -h; a0 <= h; ++a0) {
    if (a0 == 0) continue;
    for (long a1 = -h; a1 <= h; ++a1) {
      if (dedupe && std::gcd(std::gcd(a0 < 0 ? -a0 : a0, a1 < 0 ? -a1 : a1), a2) != 1) continue;
      const Integer disc = Integer(a1) * a1 - Integer(4) * a0 * a2;
      if (disc <= 0 || is_perfect_square(disc)) continue;
      const Integer s = isqrt(disc);
      const IntPolynomial p = primitive_canonical(IntPolynomial{a0, a1, a2});
      const Integer den = 2 * a2;
      const Enclosure lower(make_rational(-a1 - s - 1, den), make_rational(-a1 - s, den));
      const Enclosure upper(make_rational(-a1 + s, den), make_rational(-a1 + s + 1, den));
      out.push_back(RealAlgebraic::trusted(p, lower));
      out.push_back(RealAlgebraic::trusted(p, upper));
    }
  }
}

void emit_general(int n, long lead, long h, bool dedupe, std::vector<RealAlgebraic>& out) {
  // Odometer over (a0, ..., a_{n-1}); a0 varies slowest.
  std::vector<long> c(static_cast<std::size_t>(n), -h);
  while (true) {
    if (c[0] != 0) {
      std::vector<Integer> coeffs(c.begin(), c.end());
      coeffs.emplace_back(lead);
      const IntPolynomial p(std::move(coeffs));
      if ((!dedupe || content(p) == 1) && is_irreducible(p)) {
        const IntPolynomial q = primitive_canonical(p);
        for (auto& e : isolate_real_roots(q)) out.push_back(RealAlgebraic::trusted(q, e));
      }
    }
    int i = n - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == h) {
      c[static_cast<std::size_t>(i)] = -h;
      --i;
    }
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
  }
}

Rational pow10_inv(unsigned long digits) { return make_reduced_rational(1, pow10(digits)); }

Enclosure refined_enclosure(const RealAlgebraic& a, int level) {
  if (a.isolating().is_point()) return a.isolating();
  return refine(a.minpoly(), a.isolating(), pow10_inv(precision_digits(level) + 4));
}

struct Candidate {
  RealAlgebraic gamma;
  Enclosure enclosure;
  Enclosure distance;
};

bool preferred(const Candidate& a, const Candidate& b) {
  const Integer ha = a.gamma.height();
  const Integer hb = b.gamma.height();
  if (ha != hb) return ha < hb;
  if (a.gamma.minpoly() != b.gamma.minpoly()) return lex_less(a.gamma.minpoly(), b.gamma.minpoly());
  return a.enclosure.lo() < b.enclosure.lo();
}

bool excluded(const Target& target, const Enclosure& t0, const RealAlgebraic& g) {
  if (target.exact && same_number(*target.exact, g)) return true;
  return g.is_zero() && t0.excludes_zero();
}

// Keeps candidates whose distance might still be minimal.
void prune(std::vector<Candidate>& cands) {
  if (cands.empty()) return;
  Rational best = cands.front().distance.hi();
  for (const auto& c : cands) best = std::min(best, c.distance.hi());
  std::erase_if(cands, [&](const Candidate& c) { return c.distance.lo() > best; });
}

std::vector<Candidate> linear_candidates(const Target& target, const Enclosure& t0,
                                         const Integer& h) {
  std::vector<Candidate> out;
  std::optional<Rational> best;
  auto consider = [&](const Integer& p, const Integer& q) {
    if (cmpabs(p, h) > 0) return;
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) return;
    const Rational r = make_reduced_rational(p, q);
    RealAlgebraic a = RealAlgebraic::from_rational(r);
    if (excluded(target, t0, a)) return;
    Enclosure d = distance(t0, Enclosure::point(r));
    if (best && d.lo() > *best) return;
    if (!best || d.hi() < *best) best = d.hi();
    out.push_back({std::move(a), Enclosure::point(r), std::move(d)});
  };
  for (Integer q = 1; q <= h; ++q) {
    const Integer lo = floor(t0.lo() * Rational(q)) - 1;
    const Integer hi = ceil(t0.hi() * Rational(q)) + 1;
    if (hi - lo > 64) throw Error("target enclosure too wide for the denominator sweep");
    for (Integer p = lo; p <= hi; ++p) consider(p, q);
    // The nearest admissible numerators when the target is outside [-h, h].
    if (lo > h) consider(h, q);
    if (hi < -h) consider(-h, q);
  }
  prune(out);
  return out;
}

std::vector<Candidate> enumerated_candidates(const Target& target, const Enclosure& t0,
                                             const EnumerationSpec& spec, int jobs) {
  std::vector<RealAlgebraic> all = enumerate_algebraics(spec, jobs);
  std::vector<Candidate> out;
  std::optional<Rational> best;
  for (auto& g : all) {
    if (excluded(target, t0, g)) continue;
    Enclosure e = g.isolating();
    Enclosure d = distance(t0, e);
    if (best && d.lo() > *best) continue;
    e = refined_enclosure(g, 0);
    d = distance(t0, e);
    if (best && d.lo() > *best) continue;
    if (!best || d.hi() < *best) best = d.hi();
    out.push_back({std::move(g), std::move(e), std::move(d)});
  }
  prune(out);
  return out;
}

bool all_points_equal(const std::vector<Candidate>& cands) {
  for (const auto& c : cands) {
    if (!c.distance.is_point() || c.distance != cands.front().distance) return false;
  }
  return true;
}

}  // namespace

Integer candidate_count(const EnumerationSpec& spec) {
  return spec.height_max * ipow(2 * spec.height_max + 1, static_cast<unsigned long>(spec.degree));
}

std::vector<RealAlgebraic> enumerate_algebraics(const EnumerationSpec& spec, int jobs) {
  check_spec(spec);
  const long h = spec.height_max.get_si();
  std::vector<std::vector<RealAlgebraic>> parts(static_cast<std::size_t>(h));
  detail::parallel_for(parts.size(), jobs, [&](std::size_t i) {
    const long lead = static_cast<long>(i) + 1;
    if (spec.degree == 1) {
      emit_linear(lead, h, spec.dedupe, parts[i]);
    } else if (spec.degree == 2) {
      emit_quadratic(lead, h, spec.dedupe, parts[i]);
    } else {
      emit_general(spec.degree, lead, h, spec.dedupe, parts[i]);
    }
  });
  std::vector<RealAlgebraic> out;
  for (auto& p : parts) {
    for (auto& a : p) out.push_back(std::move(a));
  }
  return out;
}

Approximant best_approximant(const Target& target, const EnumerationSpec& spec, int refine_cap,
                             int jobs) {
  check_spec(spec, spec.degree == 1);
  const Enclosure t0 = target.source(0);
  std::vector<Candidate> cands = spec.degree == 1
                                     ? linear_candidates(target, t0, spec.height_max)
                                     : enumerated_candidates(target, t0, spec, jobs);
  if (cands.empty()) throw Error("no admissible candidates in the enumeration window");
  int level = 0;
  while (cands.size() > 1 && !all_points_equal(cands)) {
    if (++level > refine_cap) {
      std::string tied;
      for (const auto& c : cands) tied += " [" + format_coeffs(c.gamma.minpoly()) + "]";
      throw InconclusiveError("best approximant undecided after refinement cap; tied:" + tied);
    }
    const Enclosure t = target.source(level);
    for (auto& c : cands) {
      c.enclosure = refined_enclosure(c.gamma, level);
      c.distance = distance(t, c.enclosure);
    }
    prune(cands);
  }
  const auto best = std::min_element(cands.begin(), cands.end(), preferred);
  return {best->gamma, best->distance};
}

ExponentEstimate estimate_exponent(const Enclosure& d, const Integer& h) {
  constexpr long kGrid = 2000;
  if (h < 2) throw Error("a witness of height 1 carries no exponent");
  if (!d.strictly_positive()) throw Error("distance enclosure must be positive");
  if (d.hi() >= 1) throw Error("distance must be below 1 for an exponent estimate");
  const auto ug = static_cast<unsigned long>(kGrid);
  // d^G h^(a+G) < 1 <=> d < h^-(a/G + 1).
  const Integer hi_num = ipow(d.hi().get_num(), ug);
  const Integer hi_den = ipow(d.hi().get_den(), ug);
  const Integer lo_num = ipow(d.lo().get_num(), ug);
  const Integer lo_den = ipow(d.lo().get_den(), ug);
  auto surely_below = [&](long a) {
    return hi_num * ipow(h, static_cast<unsigned long>(a + kGrid)) < hi_den;
  };
  auto surely_above = [&](long a) {
    return lo_num * ipow(h, static_cast<unsigned long>(a + kGrid)) >= lo_den;
  };
  // Largest a with surely_below(a); a = -G always qualifies.
  long good = -kGrid;
  long step = kGrid;
  while (surely_below(good + step)) {
    good += step;
    step *= 2;
  }
  long bad = good + step;
  while (bad - good > 1) {
    const long mid = good + (bad - good) / 2;
    (surely_below(mid) ? good : bad) = mid;
  }
  long upper = good + 1;
  while (!surely_above(upper)) ++upper;

  ExponentEstimate e;
  e.distance = d;
  e.bracket_lo = Rational(good, kGrid);
  e.bracket_hi = Rational(upper, kGrid);
  // The value lies in [good/2000, (good+1)/2000] when upper = good + 1; the
  // nearest multiple of 1/1000 is then ceil(good/2)/1000.
  const long half = good >= 0 ? (good + 1) / 2 : -((-good) / 2);
  e.lower_estimate = Rational(half, kGrid / 2);
  return e;
}

std::vector<ExponentEstimate> exponent_scan(const Target& target, int n,
                                            const std::vector<Integer>& height_ladder,
                                            int refine_cap, int jobs) {
  for (std::size_t i = 1; i < height_ladder.size(); ++i) {
    if (!(height_ladder[i - 1] < height_ladder[i])) throw Error("height ladder must increase");
  }
  std::vector<ExponentEstimate> out;
  for (const Integer& h : height_ladder) {
    EnumerationSpec spec{n, h};
    const Approximant best = best_approximant(target, spec, refine_cap, jobs);
    Enclosure d = best.distance;
    ExponentEstimate e;
    for (int level = 0;; ++level) {
      const Enclosure t = target.source(level);
      d = distance(t, refined_enclosure(best.gamma, level));
      if (d.strictly_positive() && d.hi() < 1) {
        e = estimate_exponent(d, best.gamma.height());
        if (e.bracket_hi - e.bracket_lo <= Rational(1, 2000)) break;
      }
      if (level >= refine_cap) throw InconclusiveError("exponent bracket undecided at cap");
    }
    e.n = n;
    e.height_ceiling = h;
    e.witness = best.gamma;
    out.push_back(std::move(e));
  }
  return out;
}

ExceptionScan exception_scan(const RealAlgebraic& alpha, OpKind kind, int n,
                             const Integer& height_max, int refine_cap, int jobs) {
  const int m = alpha.degree();
  if (n < 1 || n >= m) throw Error("exception scan needs 1 <= n < deg(alpha)");
  ExceptionScan out;
  out.f = f_constant(m, n);
  const EnclosureSource target = target_source(alpha, kind);
  const std::vector<RealAlgebraic> all = enumerate_algebraics({n, height_max}, jobs);
  out.checked = all.size();
  std::vector<std::optional<FinalBoundResult>> bad(all.size());
  constexpr std::size_t kChunk = 512;
  const std::size_t chunks = (all.size() + kChunk - 1) / kChunk;
  detail::parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::size_t end = std::min(all.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      FinalBoundResult r = final_bound_check(target, m, all[i], refine_cap);
      if (r.verdict != Verdict::pass) bad[i] = std::move(r);
    }
  });
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (bad[i]) out.exceptions.push_back({all[i], std::move(*bad[i])});
  }
  return out;
}

SeparationSweep separation_sweep(int max_degree, const Integer& height_max, int jobs) {
  if (max_degree < 1) throw Error("separation_sweep: degree must be >= 1");
  std::vector<RealAlgebraic> nums;
  for (int n = 1; n <= max_degree; ++n) {
    for (auto& a : enumerate_algebraics({n, height_max}, jobs)) {
      if (!a.is_zero()) nums.push_back(std::move(a));
    }
  }
  const Rational width = make_rational(1, pow10(15));
  std::vector<Rational> window(nums.size());
  detail::parallel_for(nums.size(), jobs, [&](std::size_t i) {
    nums[i] = nums[i].tightened(refine(nums[i], width));
    Rational w = 0;
    for (int n = 1; n <= max_degree; ++n) {
      w = std::max(w, separation_lower_bound(nums[i].degree(), n, nums[i].height(), 1));
    }
    window[i] = w;
  });
  std::vector<std::size_t> order(nums.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = nums[a].isolating().lo();
    const auto& y = nums[b].isolating().lo();
    return x != y ? x < y : a < b;
  });

  struct Partial {
    std::size_t close = 0;
    std::vector<std::size_t> bad;
  };
  std::vector<Partial> parts(order.size());
  detail::parallel_for(order.size(), jobs, [&](std::size_t pos) {
    const RealAlgebraic& a = nums[order[pos]];
    const Rational reach = a.isolating().hi() + window[order[pos]];
    for (std::size_t q = pos + 1; q < order.size(); ++q) {
      const RealAlgebraic& b = nums[order[q]];
      if (b.isolating().lo() >= reach) break;
      ++parts[pos].close;
      bool ok = false;
      try {
        ok = lemma2_check(a, b).pass;
      } catch (const InconclusiveError&) {
        ok = false;
      }
      if (!ok) parts[pos].bad.push_back(order[q]);
    }
  });

  SeparationSweep out;
  out.numbers = nums.size();
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    out.close_pairs += parts[pos].close;
    for (std::size_t j : parts[pos].bad) out.violations.emplace_back(nums[order[pos]], nums[j]);
  }
  return out;
}

}  // namespace umcert
