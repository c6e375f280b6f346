#include "detail/modular.hpp"

#include <algorithm>

namespace umcert::detail {
namespace {

using Coeff = std::uint64_t;
using Poly = std::vector<Coeff>;  // ascending, trimmed

struct Field {
  Coeff ell;

  Coeff add(Coeff a, Coeff b) const { return (a + b) % ell; }
  Coeff sub(Coeff a, Coeff b) const { return (a + ell - b) % ell; }
  Coeff mul(Coeff a, Coeff b) const { return (a * b) % ell; }
  Coeff pow(Coeff a, Coeff e) const {
    Coeff r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Coeff inv(Coeff a) const { return pow(a, ell - 2); }
};

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

void make_monic(Poly& p, const Field& F) {
  if (p.empty()) return;
  const Coeff inv = F.inv(p.back());
  for (auto& c : p) c = F.mul(c, inv);
}

// Remainder of a modulo monic f.
Poly rem(Poly a, const Poly& f, const Field& F) {
  const int df = deg(f);
  trim(a);
  while (deg(a) >= df) {
    const Coeff lead = a.back();
    const int shift = deg(a) - df;
    for (int i = 0; i <= df; ++i) {
      auto& slot = a[static_cast<std::size_t>(i + shift)];
      slot = F.sub(slot, F.mul(lead, f[static_cast<std::size_t>(i)]));
    }
    trim(a);
  }
  return a;
}

Poly mul(const Poly& a, const Poly& b, const Field& F) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  trim(r);
  return r;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, const Field& F) {
  return rem(mul(a, b, F), f, F);
}

Poly powmod(Poly base, Coeff e, const Poly& f, const Field& F) {
  Poly r{1};
  base = rem(std::move(base), f, F);
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, f, F);
    base = mulmod(base, base, f, F);
    e >>= 1;
  }
  return r;
}

Poly gcd(Poly a, Poly b, const Field& F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    make_monic(b, F);
    Poly r = rem(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a, F);
  return a;
}

// a / b for monic b dividing a.
Poly quotient(Poly a, const Poly& b, const Field& F) {
  const int db = deg(b);
  if (deg(a) < db) return {};
  Poly q(static_cast<std::size_t>(deg(a) - db + 1), 0);
  while (deg(a) >= db) {
    const Coeff lead = a.back();
    const int shift = deg(a) - db;
    q[static_cast<std::size_t>(shift)] = lead;
    for (int i = 0; i <= db; ++i) {
      auto& slot = a[static_cast<std::size_t>(i + shift)];
      slot = F.sub(slot, F.mul(lead, b[static_cast<std::size_t>(i)]));
    }
    trim(a);
  }
  return q;
}

Poly derivative(const Poly& p, const Field& F) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(F.mul(p[i], i % F.ell));
  trim(d);
  return d;
}

}  // namespace

std::optional<std::vector<int>> factor_degrees_mod(const IntPolynomial& p, std::uint32_t ell) {
  const Field F{ell};
  Poly f;
  for (const auto& c : p.coeffs()) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), ell);
    f.push_back(r.get_ui());
  }
  trim(f);
  if (deg(f) != p.degree()) return std::nullopt;
  make_monic(f, F);
  if (deg(gcd(f, derivative(f, F), F)) > 0) return std::nullopt;

  std::vector<int> degrees;
  const Poly x{0, 1};
  Poly h = x;
  for (int i = 1; 2 * i <= deg(f); ++i) {
    h = powmod(h, ell, f, F);
    Poly hx = h;
    hx.resize(std::max<std::size_t>(hx.size(), 2), 0);
    hx[1] = F.sub(hx[1], 1);
    trim(hx);
    Poly g = gcd(f, hx, F);
    if (deg(g) > 0) {
      for (int j = 0; j < deg(g) / i; ++j) degrees.push_back(i);
      f = quotient(f, g, F);
      h = rem(h, f, F);
    }
  }
  if (deg(f) > 0) degrees.push_back(deg(f));
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

std::vector<std::uint32_t> odd_primes(std::size_t count) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t n = 3; primes.size() < count; n += 2) {
    bool prime = true;
    for (auto q : primes) {
      if (q * q > n) break;
      if (n % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(n);
  }
  return primes;
}

}  // namespace umcert::detail
