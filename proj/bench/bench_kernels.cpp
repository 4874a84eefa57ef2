// Times each OpenMP kernel against its serial reference and cross-checks
// that both produce identical results.
//
//   bench_kernels [limit] [threads]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "goldbach/estimators.hpp"
#include "goldbach/partition.hpp"
#include "goldbach/sieve.hpp"

using namespace goldbach;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-28s %12.1f %12.1f %9.2fx   %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const uint64_t limit = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1'000'000;
  const int threads = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
  std::printf("limit %llu, %d threads\n\n", static_cast<unsigned long long>(limit), threads);
  std::printf("%-28s %12s %12s %10s\n", "kernel", "serial ms", "parallel ms", "speedup");

  // construction
  PrimeTable serial_table = PrimeTable::build(2);
  PrimeTable parallel_table = PrimeTable::build(2);
  const double build_serial =
      time_ms([&] { serial_table = PrimeTable::build(limit, SieveMode::kSimple); });
  const double build_parallel =
      time_ms([&] { parallel_table = PrimeTable::build(limit, SieveMode::kSegmented); });
  bool same = serial_table.prime_count(limit) == parallel_table.prime_count(limit);
  for (uint64_t n = 0; n <= limit && same; n += 101) {
    same = serial_table.is_prime(n) == parallel_table.is_prime(n);
  }
  row("sieve build", build_serial, build_parallel, same);
  const PrimeTable& table = parallel_table;

  // full-range scan: pair accumulation vs per-n baseline
  PartitionSeries serial_series, parallel_series;
  const double scan_serial =
      time_ms([&] { serial_series = reference::goldbach_scan(table, 4, limit); });
  const double scan_parallel =
      time_ms([&] { parallel_series = goldbach_scan(table, 4, limit, threads); });
  row("scan [4, limit]", scan_serial, scan_parallel,
      serial_series.counts == parallel_series.counts);

  // window scan (start above 4 switches to the per-n kernel)
  const uint64_t window_lo = std::max<uint64_t>(6, limit / 10);
  const double win_serial =
      time_ms([&] { serial_series = reference::goldbach_scan(table, window_lo, limit); });
  const double win_parallel =
      time_ms([&] { parallel_series = goldbach_scan(table, window_lo, limit, threads); });
  row("scan window", win_serial, win_parallel,
      serial_series.counts == parallel_series.counts);

  // strong-form sums over a range kept small enough for the serial side
  const uint64_t strong_end = std::min<uint64_t>(limit, 40'000);
  const PartitionSeries strong_input = goldbach_scan(table, 6, strong_end, threads);
  std::vector<StrongFormRow> rows_serial, rows_parallel;
  const double strong_serial =
      time_ms([&] { rows_serial = reference::strong_form_scan(strong_input); });
  const double strong_parallel =
      time_ms([&] { rows_parallel = strong_form_scan(strong_input, threads); });
  same = rows_serial.size() == rows_parallel.size();
  for (size_t i = 0; i < rows_serial.size() && same; ++i) {
    same = rows_serial[i].margin == rows_parallel[i].margin &&
           rows_serial[i].s0 == rows_parallel[i].s0;
  }
  row("strong-form sums", strong_serial, strong_parallel, same);

  // chebyshev ratio scan
  ChebyshevReport cheb_serial, cheb_parallel;
  const double cheb_ser =
      time_ms([&] { cheb_serial = reference::chebyshev_scan(table, 2, limit); });
  const double cheb_par =
      time_ms([&] { cheb_parallel = chebyshev_scan(table, 2, limit, threads); });
  same = cheb_serial.min_ratio == cheb_parallel.min_ratio &&
         cheb_serial.max_ratio == cheb_parallel.max_ratio &&
         cheb_serial.argmin == cheb_parallel.argmin &&
         cheb_serial.argmax == cheb_parallel.argmax &&
         cheb_serial.violations.size() == cheb_parallel.violations.size();
  row("chebyshev ratios", cheb_ser, cheb_par, same);

  return 0;
}
