#include "goldbach/sieve.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace goldbach {

namespace {

constexpr uint64_t kBlockNumbers = 1ull << 16;            // prime_count index granularity
constexpr uint64_t kBlockWords = kBlockNumbers / 2 / 64;  // 512
// Segments must cover whole words or parallel clears would race.
static_assert(PrimeTable::kSegmentNumbers / 2 % 64 == 0);

uint64_t odd_slots(uint64_t limit) { return (limit + 1) / 2; }  // odds in [1, limit]

inline void clear_bit(std::vector<uint64_t>& words, uint64_t i) {
  words[i >> 6] &= ~(1ull << (i & 63));
}

inline bool test_bit(const std::vector<uint64_t>& words, uint64_t i) {
  return (words[i >> 6] >> (i & 63)) & 1u;
}

// Cross off odd multiples of odd primes within odd-index range [lo, hi).
// Index i represents the number 2i+1.
void sieve_span(std::vector<uint64_t>& words, const std::vector<uint32_t>& base_primes,
                uint64_t lo, uint64_t hi) {
  const uint64_t span_lo_num = 2 * lo + 1;
  const uint64_t span_hi_num = 2 * hi - 1;  // last odd number covered
  for (uint32_t p : base_primes) {
    const uint64_t p2 = uint64_t{p} * p;
    if (p2 > span_hi_num) break;
    uint64_t m = p2;
    if (m < span_lo_num) {
      uint64_t q = (span_lo_num + p - 1) / p;
      if (q % 2 == 0) ++q;  // odd multiplier only
      m = q * p;
    }
    for (uint64_t i = m >> 1; i < hi; i += p) clear_bit(words, i);
  }
}

// Odd base primes <= root via a plain in-place sieve.
std::vector<uint32_t> odd_primes_up_to(uint64_t root) {
  std::vector<uint32_t> primes;
  if (root < 3) return primes;
  std::vector<uint8_t> composite(root + 1, 0);
  for (uint64_t p = 3; p <= root; p += 2) {
    if (composite[p]) continue;
    primes.push_back(static_cast<uint32_t>(p));
    for (uint64_t m = p * p; m <= root; m += 2 * p) composite[m] = 1;
  }
  return primes;
}

}  // namespace

void PrimeTable::check_range(uint64_t n) const {
  if (n > limit_) {
    throw table_range_error("query n=" + std::to_string(n) + " exceeds table limit " +
                            std::to_string(limit_));
  }
}

PrimeTable PrimeTable::build(uint64_t limit, SieveMode mode) {
  if (limit < 2) throw domain_error("sieve limit must be >= 2, got " + std::to_string(limit));
  if (limit > kMaxLimit) {
    throw capacity_error("sieve limit " + std::to_string(limit) +
                         " exceeds capacity guard kMaxLimit=" + std::to_string(kMaxLimit));
  }

  PrimeTable t;
  t.limit_ = limit;
  const uint64_t slots = odd_slots(limit);
  const uint64_t words = (slots + 63) / 64;
  t.words_.assign(words, ~0ull);

  const bool segmented =
      mode == SieveMode::kSegmented || (mode == SieveMode::kAuto && limit > kSegmentedThreshold);

  if (!segmented) {
    // Plain odd-only sieve.
    for (uint64_t p = 3; p * p <= limit; p += 2) {
      if (!test_bit(t.words_, p >> 1)) continue;
      for (uint64_t i = (p * p) >> 1; i < slots; i += p) clear_bit(t.words_, i);
    }
  } else {
    const uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    const std::vector<uint32_t> base = odd_primes_up_to(std::min(root, limit));
    // Segments own disjoint word-aligned index ranges, so concurrent
    // clears never touch the same word and the result is independent of
    // scheduling.
    const uint64_t seg_slots = kSegmentNumbers / 2;
    const int64_t num_segments = static_cast<int64_t>((slots + seg_slots - 1) / seg_slots);
#pragma omp parallel for schedule(dynamic)
    for (int64_t s = 0; s < num_segments; ++s) {
      const uint64_t lo = static_cast<uint64_t>(s) * seg_slots;
      const uint64_t hi = std::min(slots, lo + seg_slots);
      sieve_span(t.words_, base, lo, hi);
    }
  }

  clear_bit(t.words_, 0);  // 1 is not prime
  // Zero the tail bits past the last odd slot so popcounts stay exact.
  const uint64_t tail = slots & 63;
  if (tail != 0) t.words_.back() &= (~0ull >> (64 - tail));

  // Per-block cumulative counts: block_counts_[k] = pi(k * 2^16 - 1),
  // i.e. all primes (including 2) below the block start.
  const uint64_t num_blocks = limit / kBlockNumbers + 1;
  t.block_counts_.assign(num_blocks, 0);
  uint64_t running = 1;  // the prime 2
  uint64_t w = 0;
  for (uint64_t k = 1; k < num_blocks; ++k) {
    const uint64_t word_end = std::min<uint64_t>(words, k * kBlockWords);
    for (; w < word_end; ++w) running += static_cast<uint64_t>(std::popcount(t.words_[w]));
    t.block_counts_[k] = running;
  }

  // Least-prime-factor table for odd n, only at scan-scale limits.
  if (limit <= kSpfTableLimit) {
    t.spf_odd_.assign(slots, 0);
    for (uint64_t p = 3; p <= limit; p += 2) {
      if (!test_bit(t.words_, p >> 1)) continue;
      t.spf_odd_[p >> 1] = static_cast<uint32_t>(p);
      for (uint64_t m = p * p; m <= limit; m += 2 * p) {
        if (t.spf_odd_[m >> 1] == 0) t.spf_odd_[m >> 1] = static_cast<uint32_t>(p);
      }
    }
  }

  return t;
}

uint64_t PrimeTable::prime_count(uint64_t n) const {
  check_range(n);
  if (n < 2) return 0;
  const uint64_t block = n / kBlockNumbers;
  uint64_t count = block_counts_[block] + (block == 0 ? 1 : 0);  // the prime 2
  // Count odd primes in [block * 2^16, n]: odd indices [block * 2^15, (n-1)/2].
  uint64_t i = block * (kBlockNumbers / 2);
  const uint64_t last = (n - 1) >> 1;
  if (i > last) return count;  // n is exactly the (even) block start
  uint64_t wi = i >> 6;
  const uint64_t wlast = last >> 6;
  if (wi == wlast) {
    const uint64_t mask = (~0ull << (i & 63)) & (~0ull >> (63 - (last & 63)));
    return count + static_cast<uint64_t>(std::popcount(words_[wi] & mask));
  }
  count += static_cast<uint64_t>(std::popcount(words_[wi] & (~0ull << (i & 63))));
  for (++wi; wi < wlast; ++wi) count += static_cast<uint64_t>(std::popcount(words_[wi]));
  count += static_cast<uint64_t>(std::popcount(words_[wlast] & (~0ull >> (63 - (last & 63)))));
  return count;
}

uint64_t PrimeTable::smallest_prime_factor(uint64_t n) const {
  check_range(n);
  if (n < 2) throw domain_error("smallest_prime_factor requires n >= 2, got " + std::to_string(n));
  if (n % 2 == 0) return 2;
  if (!spf_odd_.empty()) return spf_odd_[n >> 1];
  // On-demand path for large tables: divide by sieved odd primes <= sqrt(n).
  for (uint64_t p = 3; p * p <= n; p += 2) {
    if (!odd_bit(p >> 1)) continue;
    if (n % p == 0) return p;
  }
  return n;  // prime
}

std::vector<uint32_t> PrimeTable::primes_between(uint64_t lo, uint64_t hi) const {
  std::vector<uint32_t> out;
  if (hi >= lo && hi >= 2) {
    const double approx = hi < 17 ? 8.0 : 1.2 * static_cast<double>(hi) / std::log(static_cast<double>(hi));
    out.reserve(static_cast<size_t>(approx));
  }
  for_each_prime(lo, hi, [&out](uint64_t p) { out.push_back(static_cast<uint32_t>(p)); });
  return out;
}

namespace reference {

PrimeTable build_prime_table(uint64_t limit) {
  return PrimeTable::build(limit, SieveMode::kSimple);
}

}  // namespace reference

}  // namespace goldbach
