#include "goldbach/partition.hpp"

#include <omp.h>

#include <algorithm>
#include <string>

namespace goldbach {

namespace {

void check_even_in_table(const PrimeTable& t, uint64_t n) {
  if (n % 2 != 0 || n < 4) {
    throw domain_error("Goldbach counts are defined for even n >= 4, got " + std::to_string(n));
  }
  if (n > t.limit()) {
    throw table_range_error("n=" + std::to_string(n) + " exceeds table limit " +
                            std::to_string(t.limit()));
  }
}

void check_scan_range(const PrimeTable& t, uint64_t start, uint64_t end, size_t max_entries) {
  if (start % 2 != 0 || end % 2 != 0 || start < 4 || start > end) {
    throw domain_error("scan range must satisfy 4 <= start <= end with both even, got [" +
                       std::to_string(start) + ", " + std::to_string(end) + "]");
  }
  if (end > t.limit()) {
    throw table_range_error("scan end " + std::to_string(end) + " exceeds table limit " +
                            std::to_string(t.limit()));
  }
  const uint64_t entries = (end - start) / 2 + 1;
  if (entries > max_entries) {
    throw capacity_error("scan over [" + std::to_string(start) + ", " + std::to_string(end) +
                         "] needs " + std::to_string(entries) +
                         " entries, above the series capacity guard " +
                         std::to_string(max_entries));
  }
}

// Count pairs for one n by walking the ascending prime list from both ends.
uint32_t count_two_pointer(const std::vector<uint32_t>& primes, uint64_t n) {
  auto hi = std::upper_bound(primes.begin(), primes.end(), n - 2);
  if (hi == primes.begin()) return 0;
  size_t i = 0;
  size_t j = static_cast<size_t>(hi - primes.begin()) - 1;
  uint32_t count = 0;
  while (i <= j) {
    const uint64_t s = uint64_t{primes[i]} + primes[j];
    if (s == n) {
      ++count;
      ++i;
      if (j == 0) break;
      --j;
    } else if (s < n) {
      ++i;
    } else {
      if (j == 0) break;
      --j;
    }
  }
  return count;
}

// Histogram every prime pair with start <= p + q <= end into counts.
// Worker partials are plain integer histograms, so the merged result is
// the same for any thread count or schedule.
void scan_accumulate(const std::vector<uint32_t>& primes, uint64_t start, uint64_t end,
                     std::vector<uint32_t>& counts, int threads) {
  const size_t entries = counts.size();
  // 2 + odd prime is odd, so the only pair through 2 is 2 + 2 = 4.
  if (start <= 4 && 4 <= end && !primes.empty() && primes[0] == 2) {
    ++counts[(4 - start) / 2];
  }
  const size_t first_odd = primes.empty() || primes[0] != 2 ? 0 : 1;
  // Only p <= end/2 can open a pair with p <= q.
  const size_t p_span = static_cast<size_t>(
      std::upper_bound(primes.begin(), primes.end(), end / 2) - primes.begin());
#pragma omp parallel num_threads(threads)
  {
    std::vector<uint32_t> local(entries, 0);
#pragma omp for schedule(dynamic, 16) nowait
    for (int64_t ip = static_cast<int64_t>(first_odd); ip < static_cast<int64_t>(p_span); ++ip) {
      const uint64_t p = primes[static_cast<size_t>(ip)];
      for (size_t jq = static_cast<size_t>(ip); jq < primes.size(); ++jq) {
        const uint64_t s = p + primes[jq];
        if (s > end) break;
        if (s >= start) ++local[(s - start) / 2];
      }
    }
#pragma omp critical
    {
      for (size_t i = 0; i < entries; ++i) counts[i] += local[i];
    }
  }
}

void scan_pointwise(const std::vector<uint32_t>& primes, uint64_t start,
                    std::vector<uint32_t>& counts, int threads) {
  const int64_t entries = static_cast<int64_t>(counts.size());
#pragma omp parallel for schedule(dynamic, 256) num_threads(threads)
  for (int64_t i = 0; i < entries; ++i) {
    counts[static_cast<size_t>(i)] = count_two_pointer(primes, start + 2 * static_cast<uint64_t>(i));
  }
}

}  // namespace

uint32_t PartitionSeries::g(uint64_t n) const {
  if (n < start || n > end || (n - start) % 2 != 0) {
    throw domain_error("n=" + std::to_string(n) + " is not an even entry of the series [" +
                       std::to_string(start) + ", " + std::to_string(end) + "]");
  }
  return counts[(n - start) / 2];
}

uint64_t goldbach_count(const PrimeTable& t, uint64_t n) {
  check_even_in_table(t, n);
  uint64_t count = (n == 4) ? 1 : 0;  // the only pair through 2 is 2 + 2
  for (uint64_t p = 3; p <= n / 2; p += 2) {
    if (t.is_prime(p) && t.is_prime(n - p)) ++count;
  }
  return count;
}

PartitionSeries goldbach_scan(const PrimeTable& t, uint64_t start, uint64_t end, int threads,
                              size_t max_entries) {
  check_scan_range(t, start, end, max_entries);
  if (threads <= 0) threads = omp_get_max_threads();

  PartitionSeries series;
  series.start = start;
  series.end = end;
  series.counts.assign((end - start) / 2 + 1, 0);

  const std::vector<uint32_t> primes = t.primes_between(2, end);
  if (start == 4) {
    scan_accumulate(primes, start, end, series.counts, threads);
  } else {
    scan_pointwise(primes, start, series.counts, threads);
  }
  return series;
}

std::optional<Witness> goldbach_witness(const PrimeTable& t, uint64_t n) {
  check_even_in_table(t, n);
  if (n == 4) return Witness{2, 2};
  for (uint64_t p = 3; p <= n / 2; p += 2) {
    if (t.is_prime(p) && t.is_prime(n - p)) return Witness{p, n - p};
  }
  return std::nullopt;
}

std::vector<uint64_t> verify_positive(const PartitionSeries& series) {
  std::vector<uint64_t> zeros;
  for (size_t i = 0; i < series.size(); ++i) {
    if (series.counts[i] == 0) zeros.push_back(series.n_at(i));
  }
  return zeros;
}

namespace reference {

PartitionSeries goldbach_scan(const PrimeTable& t, uint64_t start, uint64_t end) {
  check_scan_range(t, start, end, kDefaultSeriesCapacity);
  PartitionSeries series;
  series.start = start;
  series.end = end;
  series.counts.resize((end - start) / 2 + 1);
  const std::vector<uint32_t> primes = t.primes_between(2, end);
  for (size_t i = 0; i < series.counts.size(); ++i) {
    series.counts[i] = count_two_pointer(primes, start + 2 * i);
  }
  return series;
}

}  // namespace reference

}  // namespace goldbach
