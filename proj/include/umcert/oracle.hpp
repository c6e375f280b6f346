#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "umcert/certify.hpp"

namespace umcert {

struct EnumerationSpec {
  int degree = 1;
  Integer height_max = 1;
  // Without dedupe, non-primitive multiples of irreducible polynomials are
  // visited too, so numbers repeat.
  bool dedupe = true;
  std::uint64_t candidate_cap = 10'000'000;
};

// Number of polynomials visited: H (2H+1)^n.
Integer candidate_count(const EnumerationSpec& spec);

// Every real algebraic number of exact degree n and height <= H, ordered by
// leading coefficient, then by the remaining coefficients from the constant
// term up, then by root. Partitions by leading coefficient run on `jobs`
// threads; the order does not depend on the thread count.
std::vector<RealAlgebraic> enumerate_algebraics(const EnumerationSpec& spec, int jobs = 1);

// The approximation target: an enclosure source, plus the exact value when
// it is algebraic so that candidates equal to it can be excluded.
struct Target {
  EnclosureSource source;
  std::optional<RealAlgebraic> exact;
};

struct Approximant {
  RealAlgebraic gamma = RealAlgebraic::from_rational(0);
  Enclosure distance;
};

// The enumerated number closest to the target, with a distance enclosure
// that separates it from every other candidate. Equal distances go to the
// smaller height, then to lex_less on the minimal polynomial. Degree 1
// sweeps every denominator directly, so large heights stay cheap.
Approximant best_approximant(const Target& target, const EnumerationSpec& spec,
                             int refine_cap = 12, int jobs = 1);

struct ExponentEstimate {
  int n = 0;
  Integer height_ceiling;
  RealAlgebraic witness = RealAlgebraic::from_rational(0);
  Enclosure distance;
  // -log(distance)/log(H(witness)) - 1 lies in [bracket_lo, bracket_hi]
  // (width 1/2000); lower_estimate is that value rounded to the 1/1000 grid.
  Rational bracket_lo;
  Rational bracket_hi;
  Rational lower_estimate;
};

// Largest w on the grid 1/denominator with distance < h^-(w+1) certain,
// decided by exact powering; the companion bound is one grid step up.
ExponentEstimate estimate_exponent(const Enclosure& distance, const Integer& h);

std::vector<ExponentEstimate> exponent_scan(const Target& target, int n,
                                            const std::vector<Integer>& height_ladder,
                                            int refine_cap = 12, int jobs = 1);

struct ExceptionRow {
  RealAlgebraic gamma = RealAlgebraic::from_rational(0);
  FinalBoundResult result;
};

struct ExceptionScan {
  std::size_t checked = 0;
  Rational f;
  // Candidates where the final bound failed or stayed undecided.
  std::vector<ExceptionRow> exceptions;
};

ExceptionScan exception_scan(const RealAlgebraic& alpha, OpKind kind, int n,
                             const Integer& height_max, int refine_cap = 8, int jobs = 1);

struct SeparationSweep {
  std::size_t numbers = 0;
  std::size_t close_pairs = 0;  // pairs settled by an explicit lemma2_check
  std::vector<std::pair<RealAlgebraic, RealAlgebraic>> violations;
};

// Every pair of distinct nonzero real algebraic numbers of degree <=
// max_degree and height <= height_max. Sorted by position, a pair whose
// enclosures are already farther apart than the largest bound either member
// can have is settled without refinement; the rest go through lemma2_check.
SeparationSweep separation_sweep(int max_degree, const Integer& height_max, int jobs = 1);

}  // namespace umcert
