#pragma once

#include <cstdint>
#include <vector>

#include "goldbach/errors.hpp"

namespace goldbach {

enum class SieveMode { kAuto, kSimple, kSegmented };

// Immutable primality / least-factor table over [0, limit].
//
// Storage is an odd-only bit set (bit i <-> 2i+1), 2 special-cased, so a
// full table at the kMaxLimit guard costs 125 MiB. Construction is a
// simple in-place sieve below kSegmentedThreshold and a cache-sized
// segmented sieve (kSegmentNumbers per segment, segments crossed off in
// parallel over disjoint word ranges) above it; both cost
// O(limit log log limit) and produce bit-identical tables.
//
// prime_count(n) is served by a per-block cumulative index (block = 2^16
// numbers) plus a popcount scan of at most 512 words inside the block.
//
// smallest_prime_factor is tabulated for odd n when limit <= kSpfTableLimit
// (4 bytes per odd slot); above that it falls back to on-demand division
// by sieved primes <= sqrt(n).
//
// The table is immutable after construction; all queries are read-only
// and safe to call concurrently.
class PrimeTable {
 public:
  static constexpr uint64_t kMaxLimit = 2'000'000'000;        // memory guard
  static constexpr uint64_t kSpfTableLimit = 10'000'000;      // spf tabulation cutoff
  static constexpr uint64_t kSegmentedThreshold = 1ull << 22; // simple sieve below
  static constexpr uint64_t kSegmentNumbers = 1ull << 20;     // numbers per segment

  // Throws domain_error for limit < 2, capacity_error above kMaxLimit.
  static PrimeTable build(uint64_t limit, SieveMode mode = SieveMode::kAuto);

  uint64_t limit() const { return limit_; }

  // True iff n is prime. is_prime(0) == is_prime(1) == false.
  // Throws table_range_error for n > limit (never a silent false).
  bool is_prime(uint64_t n) const {
    check_range(n);
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    return odd_bit(n >> 1);
  }

  // pi(n): number of primes <= n. Block index lookup plus an in-block
  // popcount scan, so cost is O(1) block sizes, not O(n).
  uint64_t prime_count(uint64_t n) const;

  // Least prime dividing n (== n iff n is prime). Throws domain_error for
  // n < 2, table_range_error for n > limit.
  uint64_t smallest_prime_factor(uint64_t n) const;

  // Ascending primes in [lo, hi]. hi must not exceed the table limit.
  std::vector<uint32_t> primes_between(uint64_t lo, uint64_t hi) const;

  template <typename Visit>
  void for_each_prime(uint64_t lo, uint64_t hi, Visit&& visit) const {
    check_range(hi);
    if (lo > hi) return;
    if (lo <= 2 && hi >= 2) visit(uint64_t{2});
    if (hi < 3) return;
    uint64_t first = lo | 1;  // first odd >= lo
    if (first < 3) first = 3;
    for (uint64_t i = first >> 1, last = (hi - 1) >> 1; i <= last; ++i) {
      if (odd_bit(i)) visit(2 * i + 1);
    }
  }

 private:
  PrimeTable() = default;

  void check_range(uint64_t n) const;
  bool odd_bit(uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  uint64_t limit_ = 0;
  std::vector<uint64_t> words_;         // odd-only primality bits
  std::vector<uint64_t> block_counts_;  // primes below each 2^16 block start
  std::vector<uint32_t> spf_odd_;       // least prime factor of 2i+1 (small limits)
};

namespace reference {

// Serial simple-sieve construction, the baseline the segmented builder is
// tested against.
PrimeTable build_prime_table(uint64_t limit);

}  // namespace reference

}  // namespace goldbach
