#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "goldbach/partition.hpp"
#include "goldbach/sieve.hpp"

namespace goldbach {

// Every analytic quantity evaluated at one even n.
//   s0            first-order probability sum  sum_{k=3}^{n/2} 1/(ln k ln(n-k))
//   s1, s2        its logarithmic error sums (extra 1/ln(n-k) resp. 1/ln k)
//   singular      prod (p-1)/(p-2) over distinct odd primes p | n
//   li2           integral of (ln x)^-2 over [2, n]
//   hl            2 * C * li2 * singular
//   strong_lower  s0 - s1 - s2, the strong-form lower bound at constant 1
struct EstimateBreakdown {
  uint64_t n = 0;
  double s0 = 0;
  double s1 = 0;
  double s2 = 0;
  double singular = 0;
  double li2 = 0;
  double hl = 0;
  double strong_lower = 0;
};

struct ErrorSums {
  double s1 = 0;
  double s2 = 0;
};

struct ChebyshevViolation {
  uint64_t n = 0;
  double ratio = 0;
  bool upper = false;  // true: ratio >= 9/8, false: ratio <= 7/8
};

// Measurement of r(n) = pi(n) ln n / n over a range. The 7/8 and 9/8
// bounds are asymptotic, so small n violating them is expected and
// reported, not asserted against.
struct ChebyshevReport {
  double min_ratio = 0;
  double max_ratio = 0;
  uint64_t argmin = 0;
  uint64_t argmax = 0;
  std::vector<ChebyshevViolation> violations;
};

struct StrongFormRow {
  uint64_t n = 0;
  uint32_t g = 0;
  double s0 = 0;
  double s1 = 0;
  double s2 = 0;
  double margin = 0;  // g - (s0 - s1 - s2)
  bool pass = false;  // margin > 0
};

// 1/ln n - 1/(ln n)^2, the derivative-of-n/ln-n prime density. n >= 3.
double prime_density(uint64_t n);

// sum_{k=3}^{n/2} 1/(ln k ln(n-k)) over all integers k, compensated
// summation in ascending k. Even n >= 6.
double first_order_sum(uint64_t n);

// s1 = sum 1/(ln k (ln(n-k))^2), s2 = sum 1/((ln k)^2 ln(n-k)), same
// index range and summation scheme as first_order_sum.
ErrorSums error_sums(uint64_t n);

// Partial product over odd primes p <= prime_limit of p(p-2)/(p-1)^2.
// Strictly decreasing as prime_limit passes each odd prime; the tail to
// the infinite product is O(1/(prime_limit ln prime_limit)).
// prime_limit >= 3.
double hardy_littlewood_constant(uint64_t prime_limit);

// prod (p-1)/(p-2) over distinct odd primes p | n, via least-factor
// factorization; 1 when n is a power of two. Even n with 6 <= n <= limit.
double singular_series(const PrimeTable& t, uint64_t n);

// Integral of (ln x)^-2 over [2, n] by adaptive Simpson quadrature with
// absolute tolerance 1e-9 * max(1, value). n >= 2.
double li2_integral(double n);

// 2 * c * li2_integral(n) * singular_series(n), with c the partial
// Hardy-Littlewood product at the caller's prime limit. Even n >= 6.
double hl_estimate(const PrimeTable& t, double c, uint64_t n);

// All fields at once; hl is recomputed from the sibling fields.
EstimateBreakdown estimate_breakdown(const PrimeTable& t, double c, uint64_t n);

// g > strong_lower with both unspecified asymptotic constants fixed to 1.
bool strong_form_check(uint64_t g, const EstimateBreakdown& b);

// r(n) for every n in [start, end] with 2 <= start <= end <= limit;
// returns extrema (earliest n on ties) and every n outside (7/8, 9/8).
ChebyshevReport chebyshev_scan(const PrimeTable& t, uint64_t start, uint64_t end,
                               int threads = 0);

// Strong-form rows for every entry of the series (needs exact counts).
// series.start must be >= 6. Deterministic for any thread count.
std::vector<StrongFormRow> strong_form_scan(const PartitionSeries& series, int threads = 0);

namespace detail {

// invlog[j] = 1/ln j for j in [2, n_max]; slots 0 and 1 are unused.
std::vector<double> inverse_log_table(uint64_t n_max);

struct SumTriple {
  double s0 = 0;
  double s1 = 0;
  double s2 = 0;
};

// The three compensated sums for one n, shared by the single-n operations
// and the range kernels so both produce bit-identical values.
SumTriple probability_sums(uint64_t n, std::span<const double> invlog);

}  // namespace detail

namespace reference {

// Serial twins of the range kernels.
ChebyshevReport chebyshev_scan(const PrimeTable& t, uint64_t start, uint64_t end);
std::vector<StrongFormRow> strong_form_scan(const PartitionSeries& series);

}  // namespace reference

}  // namespace goldbach
