#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "goldbach/sieve.hpp"

namespace goldbach {

// Exact partition counts G(n) for every even n in [start, end], ascending.
struct PartitionSeries {
  uint64_t start = 0;  // even, inclusive
  uint64_t end = 0;    // even, inclusive
  std::vector<uint32_t> counts;  // counts[i] = G(start + 2i)

  size_t size() const { return counts.size(); }
  uint64_t n_at(size_t i) const { return start + 2 * i; }
  uint32_t g_at(size_t i) const { return counts[i]; }

  // G(n) for an even n inside the range; throws domain_error otherwise.
  uint32_t g(uint64_t n) const;
};

// One representation n = p + q with p <= q, both prime.
struct Witness {
  uint64_t p = 0;
  uint64_t q = 0;
};

// Guard on scan allocations: counts are 4 bytes per even n.
inline constexpr size_t kDefaultSeriesCapacity = size_t{1} << 28;

// G(n) = #{(p, q) : n = p + q, p <= q, both prime}. The pair p = q counts
// once; (2, n-2) participates only for n = 4. Requires even n with
// 4 <= n <= t.limit().
uint64_t goldbach_count(const PrimeTable& t, uint64_t n);

// Per-n counts over every even n in [start, end]. Full ranges (start == 4)
// accumulate prime pairs into the count array; partial ranges count each n
// by a two-pointer walk over the prime list. Either way the result matches
// goldbach_count pointwise and is identical for every thread count.
// threads == 0 uses the OpenMP default.
PartitionSeries goldbach_scan(const PrimeTable& t, uint64_t start, uint64_t end,
                              int threads = 0, size_t max_entries = kDefaultSeriesCapacity);

// The representation with the smallest p, or nullopt if none exists.
// A nullopt at any even n >= 4 would be a Goldbach counterexample, so
// callers must surface it loudly rather than swallow it.
std::optional<Witness> goldbach_witness(const PrimeTable& t, uint64_t n);

// All n in the series with G(n) = 0 (expected empty).
std::vector<uint64_t> verify_positive(const PartitionSeries& series);

namespace reference {

// Serial per-n scan, the baseline the parallel kernels are tested against.
PartitionSeries goldbach_scan(const PrimeTable& t, uint64_t start, uint64_t end);

}  // namespace reference

}  // namespace goldbach
