#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "umcert/liouville.hpp"
#include "umcert/real_algebraic.hpp"
#include "umcert/transforms.hpp"

namespace umcert {

enum class OpKind { product, sum };

std::string_view to_string(OpKind kind);
OpKind parse_op_kind(std::string_view text);

// sqrt2 (x^2-2), cbrt2 (x^3-2), golden (x^2-x-1), fourthroot2 (x^4-2); the
// positive real root in each case.
RealAlgebraic alpha_preset(const std::string& name);
std::vector<std::string> alpha_preset_names();

// alpha * alpha_k or alpha + alpha_k.
RealAlgebraic gamma(const RealAlgebraic& alpha, OpKind kind, int k,
                    const TruncationLimits& limits = {});

// K in H(gamma_k) <= K H(alpha) H(alpha_k)^m: 1 for products, 2^(m+1) for sums.
Integer height_factor(const RealAlgebraic& alpha, OpKind kind);

// One inequality, with both sides as enclosures (exact integers and
// rationals appear as point enclosures).
struct Check {
  Verdict verdict = Verdict::inconclusive;
  Enclosure lhs;
  Enclosure rhs;
};

struct Eq9Check {
  int n = 0;
  std::string tag;  // literal, grouped or derived
  Check check;
};

struct CertificateRecord {
  int k = 0;
  OpKind kind = OpKind::product;
  RealAlgebraic gamma_k = RealAlgebraic::from_rational(0);
  Integer h_gamma_k;
  Integer h_gamma_next;
  Integer effective_height;  // K H(alpha)
  Enclosure gap;             // |target - gamma_k|
  Enclosure c;
  // gap <= c q_k^-(k+1)
  Check eq3;
  // gap <= c A^(k+1) H(gamma_k)^-(k+1), as printed
  Check eq4_literal;
  // gap^m <= c^m (A / H(gamma_k))^(k+1)
  Check eq4_corrected;
  // H(gamma_{k+1}) <= A H(alpha_{k+1})^m
  Check eq5_growth;
  // H(alpha_{k+1})^m = H(alpha_k)^((k+1)m)
  bool eq5_identity = false;
  // H(alpha_k) <= H(gamma_k), the last step of the height chain
  Check eq5_chain;
  Verdict eq5 = Verdict::inconclusive;
  // For n = 1..m-1, raised to the power 2m:
  //   H(gamma_k)^(m(k+1-2n)) >= (2c/f(m,n))^(2m) A^(2mE)
  // with 2mE = 2mk+1 (literal), k+1 (grouped), 2m(k+1)+1 (derived).
  std::vector<Eq9Check> eq9;
  // -log10(gap) / log10(H(gamma_k)), enclosed and rounded to 1e-6.
  Enclosure omega;
  Rational omega_k;
  unsigned precision_digits_used = 0;
};

struct CertifyOptions {
  TruncationLimits limits;
  int refine_cap = 8;
  int jobs = 1;
};

std::vector<CertificateRecord> certify_chain(const RealAlgebraic& alpha, OpKind kind,
                                             const CertifyOptions& options = {});

// 2m times the height exponent E of each reading of the key-index bound.
unsigned long eq9_scaled_exponent(const std::string& tag, int m, int k);

struct KeyIndexResult {
  int k = 0;
  bool pass_upper = false;
  Integer h_gamma_k;
  Integer h_gamma_next;
};

// The k with H(gamma_k) < threshold <= H(gamma_{k+1}), where threshold
// stands for H(gamma)^(2m^2). Errors when threshold <= H(gamma_1) or when k
// would exceed limits.k_max.
KeyIndexResult key_index_for_threshold(const RealAlgebraic& alpha, const Integer& threshold,
                                       OpKind kind, const TruncationLimits& limits = {});
// Same with threshold = h_gamma^(2m^2).
KeyIndexResult key_index(const RealAlgebraic& alpha, const Integer& h_gamma, OpKind kind,
                         const TruncationLimits& limits = {});

// separation_lower_bound(n, m, 1, 1), for 1 <= n < m.
Rational f_constant(int m, int n);

// 2m^2 n + m - 1 for 1 <= n <= m-1.
Integer wstar_upper(int m, int n);

// Enclosures of alpha * L or alpha + L.
EnclosureSource target_source(const RealAlgebraic& alpha, OpKind kind);

struct FinalBoundResult {
  Enclosure lhs;  // |target - gamma|
  Rational rhs;   // (f(m,n)/2) H(gamma)^-(2m^2 n + m)
  Verdict verdict = Verdict::inconclusive;
  Rational margin;  // lhs.lo - rhs
};

FinalBoundResult final_bound_check(const RealAlgebraic& alpha, OpKind kind,
                                   const RealAlgebraic& gamma, int refine_cap = 8);
// Variant reusing a prepared target source.
FinalBoundResult final_bound_check(const EnclosureSource& target, int m,
                                   const RealAlgebraic& gamma, int refine_cap = 8);

struct Summand {
  int sign = 1;                    // beta/2 + sign * 2^(1/m)/2
  Rational weight;                 // 1/2
  RealAlgebraic algebraic_part = RealAlgebraic::from_rational(0);  // sign * 2^(1/m)/2
};

struct DecomposeStep {
  int k = 0;
  RealAlgebraic gamma_left = RealAlgebraic::from_rational(0);
  RealAlgebraic gamma_right = RealAlgebraic::from_rational(0);
  bool degree_ok = false;
  Enclosure half_tail;   // (beta - beta_k)/2
  Enclosure gap_left;    // numerically computed |left - gamma_left|
  Enclosure gap_right;
  bool gaps_match = false;
};

struct DecomposeLevel {
  int level = 0;
  Enclosure beta;
  Enclosure left;
  Enclosure right;
  Enclosure sum;
  bool recombines = false;
};

struct DecompositionReport {
  int m = 0;
  std::string digits_name;
  RealAlgebraic root = RealAlgebraic::from_rational(0);  // 2^(1/m)
  Summand left;
  Summand right;
  std::vector<DecomposeStep> steps;
  std::vector<DecomposeLevel> levels;
  bool pass = false;
};

// beta = (beta + 2^(1/m))/2 + (beta - 2^(1/m))/2 for a base-10 digit number
// with digits in {1, 2}. Steps run for k = 1..limits.k_max, recombination
// is checked at levels 0..levels-1.
DecompositionReport corollary_decompose(const DigitLiouville& digits, int m,
                                    const TruncationLimits& limits = {}, int levels = 6);

struct SchmidtRow {
  RealAlgebraic a = RealAlgebraic::from_rational(0);
  RealAlgebraic b = RealAlgebraic::from_rational(0);
  Enclosure distance;
  Integer h;        // max(H(a), H(b))
  Enclosure ratio;  // distance * h^(2 + epsilon)
};

struct SchmidtReport {
  long d = 0;
  Integer h_max;
  Rational epsilon;
  std::size_t elements = 0;
  std::size_t pairs = 0;
  // Smallest ratios first.
  std::vector<SchmidtRow> rows;
};

// Elements of Q(sqrt d) of height <= h_max: rationals and quadratic
// irrationals whose discriminant is d times a square. Requires d
// squarefree, d > 1.
std::vector<RealAlgebraic> quadratic_field_elements(long d, const Integer& h_max);

SchmidtReport schmidt_probe(long d, const Integer& h_max, const Rational& epsilon,
                            std::size_t limit = 10, int jobs = 1);

}  // namespace umcert
