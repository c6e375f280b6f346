#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "umcert/polynomial.hpp"

namespace umcert::detail {

// Degrees of the irreducible factors of p modulo the prime ell, ascending.
// Empty optional when ell divides the leading coefficient or p mod ell is
// not squarefree (the pattern would not transfer to Z[x]).
std::optional<std::vector<int>> factor_degrees_mod(const IntPolynomial& p, std::uint32_t ell);

// First `count` odd primes.
std::vector<std::uint32_t> odd_primes(std::size_t count);

}  // namespace umcert::detail
