#include "umcert/certify.hpp"

#include <algorithm>
#include <array>

#include "detail/parallel.hpp"
#include "umcert/oracle.hpp"

namespace umcert {

namespace {

Check leq(Enclosure lhs, Enclosure rhs) {
  Check c{Verdict::inconclusive, std::move(lhs), std::move(rhs)};
  if (c.lhs.hi() <= c.rhs.lo()) {
    c.verdict = Verdict::pass;
  } else if (c.lhs.lo() > c.rhs.hi()) {
    c.verdict = Verdict::fail;
  }
  return c;
}

Check geq(Enclosure lhs, Enclosure rhs) {
  Check c{Verdict::inconclusive, std::move(lhs), std::move(rhs)};
  if (c.lhs.lo() >= c.rhs.hi()) {
    c.verdict = Verdict::pass;
  } else if (c.lhs.hi() < c.rhs.lo()) {
    c.verdict = Verdict::fail;
  }
  return c;
}

Enclosure point(const Integer& n) { return Enclosure::point(Rational(n)); }

Verdict combine(std::initializer_list<Verdict> parts) {
  Verdict out = Verdict::pass;
  for (Verdict v : parts) {
    if (v == Verdict::fail) return Verdict::fail;
    if (v == Verdict::inconclusive) out = Verdict::inconclusive;
  }
  return out;
}

unsigned long fact(int n) {
  unsigned long r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<unsigned long>(i);
  return r;
}

Integer two_pow(unsigned long e) {
  Integer r = 1;
  r <<= e;
  return r;
}

RealAlgebraic gamma_unchecked(const RealAlgebraic& alpha, OpKind kind, int k) {
  if (kind == OpKind::product && alpha.is_zero()) {
    throw Error("alpha = 0 makes the product sequence degenerate");
  }
  const TruncationPoint t = truncation_point(k);
  return kind == OpKind::product ? minpoly_scale(alpha, t.alpha) : minpoly_shift(alpha, t.alpha);
}

// |alpha| to `digits` significant digits, bounded away from zero.
Enclosure abs_enclosure(const RealAlgebraic& alpha, unsigned digits) {
  if (alpha.is_rational()) return Enclosure::point(abs(alpha.as_rational()));
  Rational width = make_rational(1, pow10(digits));
  Enclosure e = refine(alpha, width);
  while (!e.excludes_zero()) {
    width /= 1024;
    e = refine(alpha.minpoly(), e, width);
  }
  return round_outward(abs(e), digits);
}

Rational round_to_grid(const Rational& x, unsigned long places) {
  const Integer scale = pow10(places);
  return make_rational(floor(x * Rational(scale) + Rational(1, 2)), scale);
}

bool undecided(const Check& c) { return c.verdict == Verdict::inconclusive; }

CertificateRecord make_record(const RealAlgebraic& alpha, OpKind kind, int k,
                              const RealAlgebraic& gamma_k, const Integer& h_next,
                              unsigned digits) {
  const int m = alpha.degree();
  const auto um = static_cast<unsigned long>(m);
  const auto uk = static_cast<unsigned long>(k);
  CertificateRecord r;
  r.k = k;
  r.kind = kind;
  r.gamma_k = gamma_k;
  r.h_gamma_k = gamma_k.height();
  r.h_gamma_next = h_next;
  r.effective_height = height_factor(alpha, kind) * alpha.height();
  r.precision_digits_used = digits;
  const Integer& A = r.effective_height;
  const Integer& H = r.h_gamma_k;

  const Enclosure tail = liouville_tail_outer(k, digits);
  if (kind == OpKind::product) {
    const Enclosure a = abs_enclosure(alpha, digits);
    // alpha L - alpha alpha_k = alpha (L - alpha_k).
    r.gap = a * tail;
    r.c = Rational(10, 9) * a;
  } else {
    r.gap = tail;
    r.c = Enclosure::point(Rational(10, 9));
  }

  const Integer q_k = pow10(fact(k));
  const Integer q_next = pow10(fact(k + 1));
  const Rational q_pow_inv = make_reduced_rational(1, pow10(fact(k) * (uk + 1)));
  r.eq3 = leq(r.gap, q_pow_inv * r.c);

  const Rational ratio_pow = rpow(make_rational(A, H), k + 1);
  r.eq4_literal = leq(r.gap, ratio_pow * r.c);
  r.eq4_corrected = leq(pow(r.gap, um), ratio_pow * pow(r.c, um));

  r.eq5_growth = leq(point(h_next), point(A * ipow(q_next, um)));
  r.eq5_identity = ipow(q_next, um) == ipow(q_k, (uk + 1) * um);
  r.eq5_chain = leq(point(q_k), point(H));
  r.eq5 = combine({r.eq5_growth.verdict, r.eq5_identity ? Verdict::pass : Verdict::fail,
                   r.eq5_chain.verdict});

  for (int n = 1; n < m; ++n) {
    const Rational two_over_f = Rational(2) / f_constant(m, n);
    for (const char* tag : {"literal", "grouped", "derived"}) {
      Eq9Check e{n, tag, {}};
      if (k < 2 * n) {
        e.check.verdict = Verdict::outside_regime;
        e.check.lhs = Enclosure::point(0);
        e.check.rhs = Enclosure::point(0);
      } else {
        const auto lhs_exp = um * (uk + 1 - 2 * static_cast<unsigned long>(n));
        const Enclosure base = two_over_f * r.c;
        const Rational a_pow(ipow(A, eq9_scaled_exponent(tag, m, k)));
        e.check = geq(point(ipow(H, lhs_exp)), a_pow * pow(base, 2 * um));
      }
      r.eq9.push_back(std::move(e));
    }
  }

  if (H < 2) throw Error("omega_k undefined for H(gamma_k) < 2");
  const Rational neg_lo = -log10_enclosure(r.gap.hi()).hi();
  const Rational neg_hi = -log10_enclosure(r.gap.lo()).lo();
  r.omega = round_outward(Enclosure(neg_lo, neg_hi) / log10_enclosure(H), 12);
  r.omega_k = round_to_grid(r.omega.midpoint(), 6);
  return r;
}

bool record_settled(const CertificateRecord& r) {
  if (undecided(r.eq3) || undecided(r.eq4_literal) || undecided(r.eq4_corrected) ||
      undecided(r.eq5_growth) || undecided(r.eq5_chain)) {
    return false;
  }
  for (const auto& e : r.eq9) {
    if (undecided(e.check)) return false;
  }
  return r.omega.width() <= Rational(1, 10000000);
}

}  // namespace

std::string_view to_string(OpKind kind) { return kind == OpKind::product ? "product" : "sum"; }

OpKind parse_op_kind(std::string_view text) {
  if (text == "product") return OpKind::product;
  if (text == "sum") return OpKind::sum;
  throw Error("unknown kind '" + std::string(text) + "' (expected product or sum)");
}

std::vector<std::string> alpha_preset_names() { return {"sqrt2", "cbrt2", "golden", "fourthroot2"}; }

RealAlgebraic alpha_preset(const std::string& name) {
  IntPolynomial p;
  if (name == "sqrt2") {
    p = IntPolynomial{-2, 0, 1};
  } else if (name == "cbrt2") {
    p = IntPolynomial{-2, 0, 0, 1};
  } else if (name == "golden") {
    p = IntPolynomial{-1, -1, 1};
  } else if (name == "fourthroot2") {
    p = IntPolynomial{-2, 0, 0, 0, 1};
  } else {
    throw Error("unknown alpha preset '" + name + "'");
  }
  const auto count = isolate_real_roots(p).size();
  return RealAlgebraic::from_root_index(p, count - 1);
}

RealAlgebraic gamma(const RealAlgebraic& alpha, OpKind kind, int k, const TruncationLimits& limits) {
  limits.validate(k);
  return gamma_unchecked(alpha, kind, k);
}

Integer height_factor(const RealAlgebraic& alpha, OpKind kind) {
  if (kind == OpKind::product) return 1;
  return two_pow(static_cast<unsigned long>(alpha.degree()) + 1);
}

unsigned long eq9_scaled_exponent(const std::string& tag, int m, int k) {
  const auto um = static_cast<unsigned long>(m);
  const auto uk = static_cast<unsigned long>(k);
  if (tag == "literal") return 2 * um * uk + 1;
  if (tag == "grouped") return uk + 1;
  if (tag == "derived") return 2 * um * (uk + 1) + 1;
  throw Error("unknown exponent reading '" + tag + "'");
}

std::vector<CertificateRecord> certify_chain(const RealAlgebraic& alpha, OpKind kind,
                                             const CertifyOptions& options) {
  options.limits.validate_config();
  if (options.refine_cap < 0) throw Error("refine cap must be non-negative");
  if (kind == OpKind::product && alpha.is_zero()) {
    throw Error("alpha = 0 makes the product sequence degenerate");
  }
  const int k_max = options.limits.k_max;
  std::vector<std::optional<RealAlgebraic>> gammas(static_cast<std::size_t>(k_max) + 1);
  detail::parallel_for(gammas.size(), options.jobs, [&](std::size_t i) {
    gammas[i] = gamma_unchecked(alpha, kind, static_cast<int>(i) + 1);
  });

  std::vector<std::optional<CertificateRecord>> records(static_cast<std::size_t>(k_max));
  detail::parallel_for(records.size(), options.jobs, [&](std::size_t i) {
    const int k = static_cast<int>(i) + 1;
    const Integer h_next = gammas[i + 1]->height();
    unsigned digits = 60;
    CertificateRecord r = make_record(alpha, kind, k, *gammas[i], h_next, digits);
    for (int level = 1; level <= options.refine_cap && !record_settled(r); ++level) {
      digits *= 2;
      r = make_record(alpha, kind, k, *gammas[i], h_next, digits);
    }
    records[i] = std::move(r);
  });

  std::vector<CertificateRecord> out;
  out.reserve(records.size());
  for (auto& r : records) out.push_back(std::move(*r));
  return out;
}

KeyIndexResult key_index_for_threshold(const RealAlgebraic& alpha, const Integer& threshold,
                                       OpKind kind, const TruncationLimits& limits) {
  limits.validate_config();
  Integer h_k = gamma_unchecked(alpha, kind, 1).height();
  if (threshold <= h_k) {
    throw Error("below sequence start: H(gamma)^(2m^2) = " + scientific(threshold) +
                " does not exceed H(gamma_1) = " + to_string(h_k));
  }
  const auto um = static_cast<unsigned long>(alpha.degree());
  const Integer A = height_factor(alpha, kind) * alpha.height();
  for (int k = 1; k <= limits.k_max; ++k) {
    Integer h_next = gamma_unchecked(alpha, kind, k + 1).height();
    if (threshold <= h_next) {
      KeyIndexResult r;
      r.k = k;
      r.pass_upper = h_next <= A * ipow(h_k, (static_cast<unsigned long>(k) + 1) * um);
      r.h_gamma_k = std::move(h_k);
      r.h_gamma_next = std::move(h_next);
      return r;
    }
    h_k = std::move(h_next);
  }
  throw Error("key index exceeds k_max = " + std::to_string(limits.k_max) +
              "; raise --k-max (with --allow-large-k beyond " + std::to_string(kDefaultKMax) +
              ")");
}

KeyIndexResult key_index(const RealAlgebraic& alpha, const Integer& h_gamma, OpKind kind,
                         const TruncationLimits& limits) {
  if (h_gamma < 1) throw Error("height must be >= 1");
  const auto m = static_cast<unsigned long>(alpha.degree());
  return key_index_for_threshold(alpha, ipow(h_gamma, 2 * m * m), kind, limits);
}

Rational f_constant(int m, int n) {
  if (n < 1 || n >= m) throw Error("f_constant requires 1 <= n < m");
  return separation_lower_bound(n, m, 1, 1);
}

Integer wstar_upper(int m, int n) {
  if (m < 2 || n < 1 || n > m - 1) throw Error("wstar_upper requires 1 <= n <= m - 1");
  const Integer mm(m);
  return 2 * mm * mm * n + mm - 1;
}

EnclosureSource target_source(const RealAlgebraic& alpha, OpKind kind) {
  if (kind == OpKind::product && alpha.is_zero()) {
    throw Error("alpha = 0 makes the product sequence degenerate");
  }
  EnclosureSource l = liouville_source();
  EnclosureSource a = algebraic_source(alpha);
  CachedSource cache([l, a, kind](int level) {
    const Enclosure x = kind == OpKind::product ? a(level) * l(level) : a(level) + l(level);
    return round_outward(x, static_cast<unsigned>(precision_digits(level)) + 10);
  });
  return cache.as_source();
}

FinalBoundResult final_bound_check(const EnclosureSource& target, int m, const RealAlgebraic& g,
                                   int refine_cap) {
  const int n = g.degree();
  if (n >= m) {
    throw Error("final bound needs deg(gamma) = " + std::to_string(n) + " < m = " +
                std::to_string(m));
  }
  const auto um = static_cast<unsigned long>(m);
  const auto un = static_cast<unsigned long>(n);
  FinalBoundResult r;
  r.rhs = f_constant(m, n) / 2 *
          make_reduced_rational(1, ipow(g.height(), 2 * um * um * un + um));
  Enclosure ge = g.isolating();
  for (int level = 0; level <= refine_cap; ++level) {
    if (!ge.is_point()) {
      ge = refine(g.minpoly(), ge, make_rational(1, pow10(precision_digits(level))));
    }
    r.lhs = distance(target(level), ge);
    r.margin = r.lhs.lo() - r.rhs;
    if (r.lhs.lo() > r.rhs) {
      r.verdict = Verdict::pass;
      return r;
    }
    if (r.lhs.hi() <= r.rhs) {
      r.verdict = Verdict::fail;
      return r;
    }
  }
  r.verdict = Verdict::inconclusive;
  return r;
}

FinalBoundResult final_bound_check(const RealAlgebraic& alpha, OpKind kind, const RealAlgebraic& g,
                                   int refine_cap) {
  return final_bound_check(target_source(alpha, kind), alpha.degree(), g, refine_cap);
}

DecompositionReport corollary_decompose(const DigitLiouville& digits, int m,
                                    const TruncationLimits& limits, int levels) {
  if (m < 1) throw Error("m must be >= 1");
  if (digits.base() != 10) throw Error("the decomposition expects base-10 digits");
  limits.validate_config();
  if (digits.digit_bound() > 2) throw Error("digits must lie in {1, 2}");
  for (int j = 1; j <= limits.k_max + 2; ++j) {
    const int a = digits.digit(static_cast<std::size_t>(j));
    if (a != 1 && a != 2) throw Error("digits must lie in {1, 2}");
  }

  DecompositionReport rep;
  rep.m = m;
  rep.digits_name = digits.name();
  std::vector<Integer> c(static_cast<std::size_t>(m) + 1, Integer(0));
  c[0] = -2;
  c[static_cast<std::size_t>(m)] = 1;
  const IntPolynomial root_poly(std::move(c));
  rep.root = RealAlgebraic::from_root_index(root_poly, isolate_real_roots(root_poly).size() - 1);
  rep.left = {1, Rational(1, 2), minpoly_scale(rep.root, Rational(1, 2))};
  rep.right = {-1, Rational(1, 2), minpoly_scale(rep.root, Rational(-1, 2))};
  const Rational half(1, 2);

  bool pass = true;
  for (int k = 1; k <= limits.k_max; ++k) {
    DecomposeStep s;
    s.k = k;
    const DigitTruncation t = digit_truncation_outer(digits, k, limits);
    const Rational shift = make_rational(t.p, 2 * t.q);
    s.gamma_left = minpoly_shift(rep.left.algebraic_part, shift);
    s.gamma_right = minpoly_shift(rep.right.algebraic_part, shift);
    s.degree_ok = s.gamma_left.degree() == m && s.gamma_right.degree() == m;
    s.half_tail = half * t.tail;

    // Independent numeric gap: beta from the digit sum, the root and
    // gamma'_k each refined well below the size of the tail.
    const unsigned long tail_digits = fact(k + 1) + 12;
    const Rational width = make_rational(1, pow10(tail_digits));
    const Enclosure beta = round_outward(digit_enclosure(digits, k + 1),
                                         static_cast<unsigned>(tail_digits + 8));
    const Enclosure root = refine(rep.root, width);
    const Enclosure gl = refine(s.gamma_left, width);
    const Enclosure gr = refine(s.gamma_right, width);
    s.gap_left = (half * beta + half * root) - gl;
    s.gap_right = (half * beta - half * root) - gr;
    s.gaps_match = s.gap_left.strictly_positive() && s.gap_right.strictly_positive() &&
                   intersect(s.gap_left, s.half_tail).has_value() &&
                   intersect(s.gap_right, s.half_tail).has_value();
    pass = pass && s.degree_ok && s.gaps_match;
    rep.steps.push_back(std::move(s));
  }

  const EnclosureSource beta_src = digit_source(digits);
  const EnclosureSource root_src = algebraic_source(rep.root);
  for (int level = 0; level < levels; ++level) {
    DecomposeLevel l;
    l.level = level;
    l.beta = beta_src(level);
    const Enclosure root = root_src(level);
    l.left = half * l.beta + half * root;
    l.right = half * l.beta - half * root;
    l.sum = l.left + l.right;
    l.recombines = l.sum.contains(l.beta);
    pass = pass && l.recombines;
    rep.levels.push_back(std::move(l));
  }
  rep.pass = pass;
  return rep;
}

std::vector<RealAlgebraic> quadratic_field_elements(long d, const Integer& h_max) {
  if (d == 0 || d == 1) throw Error("d must differ from 0 and 1");
  if (d < 0) throw Error("Q(sqrt d) with d < 0 has no real irrational elements; use d > 1");
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) throw Error("d must be squarefree");
  }
  if (h_max < 1) throw Error("h_max must be >= 1");
  std::vector<RealAlgebraic> out = enumerate_algebraics({1, h_max});
  const Integer dd(d);
  for (auto& a : enumerate_algebraics({2, h_max})) {
    const auto c = a.minpoly().coeffs();
    const Integer disc = c[1] * c[1] - 4 * c[0] * c[2];
    if (disc % dd != 0) continue;
    if (!is_perfect_square(disc / dd)) continue;
    out.push_back(std::move(a));
  }
  return out;
}

SchmidtReport schmidt_probe(long d, const Integer& h_max, const Rational& epsilon,
                            std::size_t limit, int jobs) {
  if (epsilon < 0) throw Error("epsilon must be >= 0");
  SchmidtReport rep;
  rep.d = d;
  rep.h_max = h_max;
  rep.epsilon = epsilon;
  std::vector<RealAlgebraic> elems = quadratic_field_elements(d, h_max);
  rep.elements = elems.size();
  const Rational width = make_rational(1, pow10(40));
  std::vector<Enclosure> encl(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) encl[i] = refine(elems[i], width);
  std::vector<Integer> heights(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) heights[i] = elems[i].height();

  const Integer& u = epsilon.get_num();
  const Integer& v = epsilon.get_den();
  auto height_power = [&](const Integer& h) {
    // h^(2 + u/v) = h^2 (h^u)^(1/v).
    const Integer hu = ipow(h, u.get_ui());
    const Integer r = iroot(hu, v.get_ui());
    const Integer sq = h * h;
    if (ipow(r, v.get_ui()) == hu) return Enclosure::point(Rational(sq * r));
    return Enclosure(Rational(sq * r), Rational(sq * (r + 1)));
  };

  struct Entry {
    std::size_t i, j;
    Enclosure ratio;
  };
  auto better = [](const Entry& x, const Entry& y) {
    if (x.ratio.lo() != y.ratio.lo()) return x.ratio.lo() < y.ratio.lo();
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  };
  std::vector<std::vector<Entry>> partial(elems.size());
  detail::parallel_for(elems.size(), jobs, [&](std::size_t i) {
    std::vector<Entry> best;
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const Integer& h = std::max(heights[i], heights[j]);
      Entry e{i, j, distance(encl[i], encl[j]) * height_power(h)};
      if (best.size() == limit && !better(e, best.back())) continue;
      best.insert(std::upper_bound(best.begin(), best.end(), e, better), std::move(e));
      if (best.size() > limit) best.pop_back();
    }
    partial[i] = std::move(best);
  });
  std::vector<Entry> all;
  for (auto& p : partial) {
    for (auto& e : p) all.push_back(std::move(e));
  }
  rep.pairs = elems.size() < 2 ? 0 : elems.size() * (elems.size() - 1) / 2;
  std::sort(all.begin(), all.end(), better);
  if (all.size() > limit) all.resize(limit);
  for (auto& e : all) {
    SchmidtRow row;
    row.a = elems[e.i];
    row.b = elems[e.j];
    row.distance = distance(encl[e.i], encl[e.j]);
    row.h = std::max(heights[e.i], heights[e.j]);
    row.ratio = e.ratio;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace umcert
