#include "umcert/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "detail/modular.hpp"

namespace umcert {

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPolynomial IntPolynomial::constant(const Integer& c) { return IntPolynomial({c}); }

IntPolynomial IntPolynomial::monomial(const Integer& c, std::size_t d) {
  std::vector<Integer> v(d + 1, Integer(0));
  v[d] = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Integer& IntPolynomial::coeff(std::size_t i) const {
  static const Integer zero(0);
  return i < coeffs_.size() ? coeffs_[i] : zero;
}

const Integer& IntPolynomial::leading() const {
  if (is_zero()) throw Error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Integer IntPolynomial::operator()(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

// sum c_i n^i d^(m-i) for x = n/d, m = degree.
Integer homogeneous_value(const std::vector<Integer>& c, const Rational& x) {
  if (c.empty()) return 0;
  const Integer& n = x.get_num();
  const Integer& d = x.get_den();
  Integer acc = c.back();
  Integer dpow = 1;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    dpow *= d;
    acc = acc * n + c[i] * dpow;
  }
  return acc;
}

}  // namespace

Rational IntPolynomial::operator()(const Rational& x) const {
  if (is_zero()) return 0;
  Integer num = homogeneous_value(coeffs_, x);
  return make_rational(num, ipow(x.get_den(), static_cast<unsigned long>(degree())));
}

int IntPolynomial::sign_at(const Rational& x) const {
  return sgn(homogeneous_value(coeffs_, x));
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Integer> v(coeffs_);
  for (auto& c : v) c = -c;
  return IntPolynomial(std::move(v));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Integer(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> v(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const Integer& c, const IntPolynomial& p) {
  std::vector<Integer> v(p.coeffs_);
  for (auto& x : v) x *= c;
  return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    const Integer mag = ::abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

bool lex_less(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

IntPolynomial parse_coeffs(std::string_view text) {
  std::vector<Integer> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start);
    coeffs.push_back(parse_integer(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return IntPolynomial(std::move(coeffs));
}

std::string format_coeffs(const IntPolynomial& p, char sep) {
  std::string out;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i > 0) out += sep;
    out += p.coeffs()[i].get_str();
  }
  return out.empty() ? "0" : out;
}

Integer height(const IntPolynomial& p) {
  if (p.is_zero()) throw Error("undefined height: zero polynomial");
  Integer h = 0;
  for (const auto& c : p.coeffs()) {
    if (mpz_cmpabs(c.get_mpz_t(), h.get_mpz_t()) > 0) h = ::abs(c);
  }
  return h;
}

Integer content(const IntPolynomial& p) {
  if (p.is_zero()) throw Error("content of the zero polynomial");
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial primitive_canonical(const IntPolynomial& p) {
  if (p.is_zero()) throw Error("primitive part of the zero polynomial");
  Integer g = content(p);
  if (p.leading() < 0) g = -g;
  if (g == 1) return p;
  std::vector<Integer> v(p.coeffs().begin(), p.coeffs().end());
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(v));
}

bool is_canonical(const IntPolynomial& p) {
  return !p.is_zero() && p.leading() > 0 && content(p) == 1;
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw Error("pseudo-remainder by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  const int db = b.degree();
  const Integer& lb = b.leading();
  int e = a.degree() - db + 1;
  std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
  auto dr = static_cast<int>(r.size()) - 1;
  while (dr >= db && dr >= 0) {
    const Integer lr = r[static_cast<std::size_t>(dr)];
    for (auto& c : r) c *= lb;
    const int shift = dr - db;
    for (int i = 0; i <= db; ++i)
      r[static_cast<std::size_t>(i + shift)] -= lr * b.coeffs()[static_cast<std::size_t>(i)];
    --e;
    while (!r.empty() && r.back() == 0) r.pop_back();
    dr = static_cast<int>(r.size()) - 1;
  }
  if (e > 0) {
    const Integer f = ipow(lb, static_cast<unsigned long>(e));
    for (auto& c : r) c *= f;
  }
  return IntPolynomial(std::move(r));
}

std::optional<IntPolynomial> exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  if (a.is_zero()) return IntPolynomial{};
  if (a.degree() < b.degree()) return std::nullopt;
  const int db = b.degree();
  std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - db + 1), Integer(0));
  for (int i = a.degree() - db; i >= 0; --i) {
    Integer& top = r[static_cast<std::size_t>(i + db)];
    if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t())) return std::nullopt;
    Integer t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(i + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(i)] = t;
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() && b.is_zero()) throw Error("gcd of two zero polynomials");
  if (a.is_zero()) return primitive_canonical(b);
  if (b.is_zero()) return primitive_canonical(a);
  IntPolynomial x = primitive_canonical(a);
  IntPolynomial y = primitive_canonical(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPolynomial r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? r : primitive_canonical(r);
  }
  return x.degree() == 0 ? IntPolynomial{1} : x;
}

bool is_squarefree(const IntPolynomial& p) {
  if (p.degree() <= 1) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

std::vector<Rational> rational_roots(const IntPolynomial& poly) {
  if (poly.is_zero()) throw Error("rational roots of the zero polynomial");
  std::vector<Rational> roots;
  // Strip factors of x.
  std::size_t low = 0;
  while (poly.coeff(low) == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  IntPolynomial p(std::vector<Integer>(poly.coeffs().begin() + static_cast<long>(low),
                                       poly.coeffs().end()));
  if (p.degree() >= 1) {
    const auto tops = positive_divisors(p.leading());
    const auto bottoms = positive_divisors(p.coeff(0));
    std::set<Rational> found;
    for (const auto& s : tops) {
      for (const auto& r : bottoms) {
        if (gcd(r, s) != 1) continue;
        for (int sign : {1, -1}) {
          Rational x = make_rational(sign * r, s);
          if (p.sign_at(x) == 0) found.insert(x);
        }
      }
    }
    roots.insert(roots.end(), found.begin(), found.end());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Integer mignotte_bound(const IntPolynomial& p, int d) {
  Integer norm2 = 0;
  for (const auto& c : p.coeffs()) norm2 += c * c;
  Integer norm = isqrt(norm2);
  if (norm * norm < norm2) norm += 1;
  Integer best = 0;
  for (int j = 0; j <= d; ++j) {
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(j));
    if (binom > best) best = binom;
  }
  return best * norm;
}

namespace {

// Search for a factor of exact degree d (2 <= d <= deg/2) of a primitive,
// squarefree f without rational roots. Newton interpolation through d+1
// integer nodes: the factor's values divide f's values there, and every
// Newton coefficient of an integer polynomial at integer nodes is an
// integer, which prunes the divisor tuples early.
bool has_factor_of_degree(const IntPolynomial& f, int d) {
  struct Node {
    Integer t;
    std::vector<Integer> divisors;
  };
  std::vector<Node> pool;
  for (long step = 0; pool.size() < static_cast<std::size_t>(d + 1) + 6 && step < 64; ++step) {
    const long t = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
    const Integer value = f(Integer(t));
    if (value == 0) continue;  // cannot happen without rational roots
    pool.push_back({Integer(t), positive_divisors(value)});
  }
  std::stable_sort(pool.begin(), pool.end(), [](const Node& a, const Node& b) {
    return a.divisors.size() < b.divisors.size();
  });
  pool.resize(static_cast<std::size_t>(d + 1));

  const Integer bound = mignotte_bound(f, d);
  const Integer& f_lead = f.leading();
  const Integer& f_const = f.coeff(0);

  std::vector<Integer> newton(static_cast<std::size_t>(d + 1));
  // Value of the Newton interpolant built from coefficients [0, j) at node j.
  auto interpolant_at = [&](std::size_t j) {
    Integer acc = 0;
    for (std::size_t i = j; i-- > 0;) acc = acc * (pool[j].t - pool[i].t) + newton[i];
    return acc;
  };
  auto node_product = [&](std::size_t j) {
    Integer prod = 1;
    for (std::size_t i = 0; i < j; ++i) prod *= pool[j].t - pool[i].t;
    return prod;
  };

  auto expand = [&]() {
    IntPolynomial g{0};
    IntPolynomial basis{1};
    for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) {
      g = g + newton[i] * basis;
      basis = basis * IntPolynomial(std::vector<Integer>{-pool[i].t, Integer(1)});
    }
    return g;
  };

  auto search = [&](auto&& self, std::size_t j) -> bool {
    if (j == static_cast<std::size_t>(d + 1)) {
      const Integer& lead = newton[static_cast<std::size_t>(d)];
      if (lead == 0 || !mpz_divisible_p(f_lead.get_mpz_t(), lead.get_mpz_t())) return false;
      IntPolynomial g = expand();
      if (g.degree() != d) return false;
      for (const auto& c : g.coeffs())
        if (mpz_cmpabs(c.get_mpz_t(), bound.get_mpz_t()) > 0) return false;
      if (!mpz_divisible_p(f_const.get_mpz_t(), g.coeff(0).get_mpz_t())) return false;
      return exact_quotient(f, g).has_value();
    }
    const Integer base = interpolant_at(j);
    const Integer denom = node_product(j);
    for (const auto& dv : pool[j].divisors) {
      for (int sign : {1, -1}) {
        // The factor is determined up to sign; fix g(t_0) > 0.
        if (j == 0 && sign < 0) continue;
        const Integer value = sign * dv;
        const Integer diff = value - base;
        if (!mpz_divisible_p(diff.get_mpz_t(), denom.get_mpz_t())) continue;
        mpz_divexact(newton[j].get_mpz_t(), diff.get_mpz_t(), denom.get_mpz_t());
        if (self(self, j + 1)) return true;
      }
    }
    return false;
  };
  return search(search, 0);
}

}  // namespace

bool is_irreducible(const IntPolynomial& poly) {
  if (poly.is_zero()) throw Error("is_irreducible: zero polynomial");
  if (poly.degree() == 0) throw Error("is_irreducible: constant polynomial");
  const IntPolynomial f = primitive_canonical(poly);
  const int n = f.degree();
  if (n == 1) return true;
  if (f.coeff(0) == 0) return false;

  // Candidate factor degrees d in [1, n/2]; patterns modulo primes not
  // dividing the leading coefficient rule most of them out.
  std::vector<bool> possible(static_cast<std::size_t>(n + 1), true);
  int screened = 0;
  bool squarefree_known = false;
  for (auto ell : detail::odd_primes(40)) {
    auto pattern = detail::factor_degrees_mod(f, ell);
    if (!pattern) continue;
    squarefree_known = true;
    std::vector<bool> sums(static_cast<std::size_t>(n + 1), false);
    sums[0] = true;
    for (int deg : *pattern)
      for (int s = n; s >= deg; --s)
        if (sums[static_cast<std::size_t>(s - deg)]) sums[static_cast<std::size_t>(s)] = true;
    for (int d = 1; d <= n; ++d)
      possible[static_cast<std::size_t>(d)] =
          possible[static_cast<std::size_t>(d)] && sums[static_cast<std::size_t>(d)];
    bool any = false;
    for (int d = 1; 2 * d <= n; ++d) any = any || possible[static_cast<std::size_t>(d)];
    if (!any) return true;
    if (++screened >= 12) break;
  }

  if (!squarefree_known && !is_squarefree(f)) return false;
  if (possible[1] && !rational_roots(f).empty()) return false;
  for (int d = 2; 2 * d <= n; ++d) {
    if (!possible[static_cast<std::size_t>(d)]) continue;
    if (has_factor_of_degree(f, d)) return false;
  }
  return true;
}

}  // namespace umcert
