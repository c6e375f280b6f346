#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "umcert/polynomial.hpp"

namespace umcert::testing {

// Fixed seeds keep every property run reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  long nonzero(long lo, long hi) {
    for (;;) {
      const long v = integer(lo, hi);
      if (v != 0) return v;
    }
  }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(long num_bound, long den_bound) {
    return Rational(integer(-num_bound, num_bound), integer(1, den_bound));
  }

  // Degree exactly `degree`, coefficients in [-bound, bound].
  IntPolynomial polynomial(int degree, long bound) {
    std::vector<Integer> c;
    for (int i = 0; i < degree; ++i) c.emplace_back(integer(-bound, bound));
    c.emplace_back(nonzero(-bound, bound));
    return IntPolynomial(std::move(c));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace umcert::testing
