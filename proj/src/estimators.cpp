#include "goldbach/estimators.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "goldbach/kahan.hpp"

namespace goldbach {

namespace {

constexpr double kChebyshevLo = 7.0 / 8.0;
constexpr double kChebyshevHi = 9.0 / 8.0;
constexpr uint64_t kChebyshevChunk = 1ull << 16;  // fixed, so merges ignore thread count

void check_even_ge6(uint64_t n) {
  if (n % 2 != 0 || n < 6) {
    throw domain_error("operation requires even n >= 6, got " + std::to_string(n));
  }
}

double integrand(double x) {
  const double l = std::log(x);
  return 1.0 / (l * l);
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                        double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = integrand(lm);
  const double frm = integrand(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

// r(n) over [lo, hi] with pi carried incrementally from pi(lo).
template <typename Emit>
void chebyshev_span(const PrimeTable& t, uint64_t lo, uint64_t hi, uint64_t pi_before_lo,
                    Emit&& emit) {
  uint64_t pi = pi_before_lo;
  for (uint64_t n = lo; n <= hi; ++n) {
    if (t.is_prime(n)) ++pi;
    const double ratio = static_cast<double>(pi) * std::log(static_cast<double>(n)) /
                         static_cast<double>(n);
    emit(n, ratio);
  }
}

struct ChebyshevChunkResult {
  double min_ratio = 0;
  double max_ratio = 0;
  uint64_t argmin = 0;
  uint64_t argmax = 0;
  std::vector<ChebyshevViolation> violations;
};

ChebyshevChunkResult chebyshev_chunk(const PrimeTable& t, uint64_t lo, uint64_t hi) {
  ChebyshevChunkResult r;
  r.min_ratio = std::numeric_limits<double>::infinity();
  r.max_ratio = -std::numeric_limits<double>::infinity();
  chebyshev_span(t, lo, hi, t.prime_count(lo - 1), [&r](uint64_t n, double ratio) {
    if (ratio < r.min_ratio) {
      r.min_ratio = ratio;
      r.argmin = n;
    }
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax = n;
    }
    if (ratio <= kChebyshevLo || ratio >= kChebyshevHi) {
      r.violations.push_back({n, ratio, ratio >= kChebyshevHi});
    }
  });
  return r;
}

void check_chebyshev_range(const PrimeTable& t, uint64_t start, uint64_t end) {
  if (start < 2 || start > end) {
    throw domain_error("chebyshev scan requires 2 <= start <= end, got [" +
                       std::to_string(start) + ", " + std::to_string(end) + "]");
  }
  if (end > t.limit()) {
    throw table_range_error("chebyshev scan end " + std::to_string(end) +
                            " exceeds table limit " + std::to_string(t.limit()));
  }
}

std::vector<StrongFormRow> strong_form_rows(const PartitionSeries& series, int threads) {
  if (series.size() == 0 || series.start < 6) {
    throw domain_error("strong-form scan requires a series starting at n >= 6");
  }
  const std::vector<double> invlog = detail::inverse_log_table(series.end);
  std::vector<StrongFormRow> rows(series.size());
  const int64_t entries = static_cast<int64_t>(series.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (int64_t i = 0; i < entries; ++i) {
    const uint64_t n = series.n_at(static_cast<size_t>(i));
    const auto sums = detail::probability_sums(n, invlog);
    StrongFormRow& row = rows[static_cast<size_t>(i)];
    row.n = n;
    row.g = series.g_at(static_cast<size_t>(i));
    row.s0 = sums.s0;
    row.s1 = sums.s1;
    row.s2 = sums.s2;
    row.margin = static_cast<double>(row.g) - (sums.s0 - sums.s1 - sums.s2);
    row.pass = row.margin > 0.0;
  }
  return rows;
}

}  // namespace

namespace detail {

std::vector<double> inverse_log_table(uint64_t n_max) {
  std::vector<double> invlog(n_max + 1, 0.0);
  for (uint64_t j = 2; j <= n_max; ++j) {
    invlog[j] = 1.0 / std::log(static_cast<double>(j));
  }
  return invlog;
}

SumTriple probability_sums(uint64_t n, std::span<const double> invlog) {
  KahanSum s0, s1, s2;
  for (uint64_t k = 3; k <= n / 2; ++k) {
    const double a = invlog[k];
    const double b = invlog[n - k];
    const double t0 = a * b;
    s0.add(t0);
    s1.add(t0 * b);
    s2.add(t0 * a);
  }
  return {s0.value(), s1.value(), s2.value()};
}

}  // namespace detail

double prime_density(uint64_t n) {
  if (n < 3) throw domain_error("prime_density requires n >= 3, got " + std::to_string(n));
  const double inv = 1.0 / std::log(static_cast<double>(n));
  return inv - inv * inv;
}

double first_order_sum(uint64_t n) {
  check_even_ge6(n);
  const std::vector<double> invlog = detail::inverse_log_table(n);
  return detail::probability_sums(n, invlog).s0;
}

ErrorSums error_sums(uint64_t n) {
  check_even_ge6(n);
  const std::vector<double> invlog = detail::inverse_log_table(n);
  const auto sums = detail::probability_sums(n, invlog);
  return {sums.s1, sums.s2};
}

double hardy_littlewood_constant(uint64_t prime_limit) {
  if (prime_limit < 3) {
    throw domain_error("hardy_littlewood_constant requires prime_limit >= 3, got " +
                       std::to_string(prime_limit));
  }
  const PrimeTable t = PrimeTable::build(prime_limit);
  double product = 1.0;
  t.for_each_prime(3, prime_limit, [&product](uint64_t p) {
    const double pd = static_cast<double>(p);
    product *= pd * (pd - 2.0) / ((pd - 1.0) * (pd - 1.0));
  });
  return product;
}

double singular_series(const PrimeTable& t, uint64_t n) {
  check_even_ge6(n);
  if (n > t.limit()) {
    throw table_range_error("singular_series n=" + std::to_string(n) +
                            " exceeds table limit " + std::to_string(t.limit()));
  }
  uint64_t m = n >> std::countr_zero(n);
  double product = 1.0;
  while (m > 1) {
    const uint64_t p = t.smallest_prime_factor(m);
    product *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
    while (m % p == 0) m /= p;
  }
  return product;
}

double li2_integral(double n) {
  if (!(n >= 2.0)) {
    throw domain_error("li2_integral requires n >= 2");
  }
  if (n == 2.0) return 0.0;
  const double a = 2.0;
  const double fa = integrand(a);
  const double fb = integrand(n);
  const double fm = integrand(0.5 * (a + n));
  const double whole = simpson(a, n, fa, fm, fb);
  // First pass pins the scale, second runs at the documented absolute
  // tolerance 1e-9 * max(1, value). The single-interval Simpson estimate
  // can overshoot the true value by orders of magnitude on wide ranges.
  const double coarse_eps = 1e-9 * std::max(1.0, std::fabs(whole));
  const double coarse = adaptive_simpson(a, n, fa, fm, fb, whole, coarse_eps, 60);
  const double eps = 1e-9 * std::max(1.0, std::fabs(coarse));
  if (eps >= coarse_eps) return coarse;
  return adaptive_simpson(a, n, fa, fm, fb, whole, eps, 60);
}

double hl_estimate(const PrimeTable& t, double c, uint64_t n) {
  return 2.0 * c * li2_integral(static_cast<double>(n)) * singular_series(t, n);
}

EstimateBreakdown estimate_breakdown(const PrimeTable& t, double c, uint64_t n) {
  check_even_ge6(n);
  if (n > t.limit()) {
    throw table_range_error("estimate_breakdown n=" + std::to_string(n) +
                            " exceeds table limit " + std::to_string(t.limit()));
  }
  const std::vector<double> invlog = detail::inverse_log_table(n);
  const auto sums = detail::probability_sums(n, invlog);
  EstimateBreakdown b;
  b.n = n;
  b.s0 = sums.s0;
  b.s1 = sums.s1;
  b.s2 = sums.s2;
  b.singular = singular_series(t, n);
  b.li2 = li2_integral(static_cast<double>(n));
  b.hl = 2.0 * c * b.li2 * b.singular;
  b.strong_lower = b.s0 - b.s1 - b.s2;
  return b;
}

bool strong_form_check(uint64_t g, const EstimateBreakdown& b) {
  return static_cast<double>(g) > b.strong_lower;
}

ChebyshevReport chebyshev_scan(const PrimeTable& t, uint64_t start, uint64_t end, int threads) {
  check_chebyshev_range(t, start, end);
  if (threads <= 0) threads = omp_get_max_threads();

  // Fixed-size chunks merged in index order: the partition does not depend
  // on the thread count, so neither does any output byte.
  const uint64_t span = end - start + 1;
  const int64_t num_chunks = static_cast<int64_t>((span + kChebyshevChunk - 1) / kChebyshevChunk);
  std::vector<ChebyshevChunkResult> chunks(static_cast<size_t>(num_chunks));
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int64_t ci = 0; ci < num_chunks; ++ci) {
    const uint64_t lo = start + static_cast<uint64_t>(ci) * kChebyshevChunk;
    const uint64_t hi = std::min(end, lo + kChebyshevChunk - 1);
    chunks[static_cast<size_t>(ci)] = chebyshev_chunk(t, lo, hi);
  }

  ChebyshevReport report;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = -std::numeric_limits<double>::infinity();
  for (const auto& c : chunks) {
    if (c.min_ratio < report.min_ratio) {
      report.min_ratio = c.min_ratio;
      report.argmin = c.argmin;
    }
    if (c.max_ratio > report.max_ratio) {
      report.max_ratio = c.max_ratio;
      report.argmax = c.argmax;
    }
    report.violations.insert(report.violations.end(), c.violations.begin(), c.violations.end());
  }
  return report;
}

std::vector<StrongFormRow> strong_form_scan(const PartitionSeries& series, int threads) {
  if (threads <= 0) threads = omp_get_max_threads();
  return strong_form_rows(series, threads);
}

namespace reference {

ChebyshevReport chebyshev_scan(const PrimeTable& t, uint64_t start, uint64_t end) {
  check_chebyshev_range(t, start, end);
  ChebyshevReport report;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = -std::numeric_limits<double>::infinity();
  chebyshev_span(t, start, end, t.prime_count(start - 1), [&report](uint64_t n, double ratio) {
    if (ratio < report.min_ratio) {
      report.min_ratio = ratio;
      report.argmin = n;
    }
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax = n;
    }
    if (ratio <= kChebyshevLo || ratio >= kChebyshevHi) {
      report.violations.push_back({n, ratio, ratio >= kChebyshevHi});
    }
  });
  return report;
}

std::vector<StrongFormRow> strong_form_scan(const PartitionSeries& series) {
  return strong_form_rows(series, 1);
}

}  // namespace reference

}  // namespace goldbach
