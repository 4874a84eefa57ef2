#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "goldbach/estimators.hpp"
#include "goldbach/partition.hpp"
#include "oracles.hpp"

using namespace goldbach;

namespace {
const PrimeTable& table() {
  static const PrimeTable t = PrimeTable::build(1'000'000);
  return t;
}
}  // namespace

TEST_CASE("prime density values") {
  // 1/ln n - 1/(ln n)^2 evaluated at 30 digits
  CHECK(prime_density(8) == doctest::Approx(0.249635126851253602690).epsilon(1e-14));
  CHECK(prime_density(3) == doctest::Approx(0.081703776936614349239).epsilon(1e-14));
  for (uint64_t n : {3ull, 10ull, 100ull, 1'000'000ull, 1ull << 40}) {
    CHECK(prime_density(n) > 0.0);
  }
  // decays toward zero from above
  CHECK(prime_density(1ull << 40) < prime_density(100));
  CHECK_THROWS_AS((void)prime_density(2), domain_error);
  CHECK_THROWS_AS((void)prime_density(0), domain_error);
}

TEST_CASE("first-order sum point values") {
  // n=6 is the single term 1/(ln 3)^2; the k=3 midpoint is counted once
  CHECK(first_order_sum(6) == doctest::Approx(0.828535449690223044).epsilon(1e-15));
  CHECK(first_order_sum(6) == doctest::Approx(1.0 / (std::log(3.0) * std::log(3.0))).epsilon(1e-15));
  // n=8: 1/(ln3 ln5) + 1/(ln4)^2
  CHECK(first_order_sum(8) == doctest::Approx(1.085905675561179626).epsilon(1e-15));
  CHECK_THROWS_AS((void)first_order_sum(7), domain_error);
  CHECK_THROWS_AS((void)first_order_sum(4), domain_error);
}

TEST_CASE("error sum point values") {
  const auto e6 = error_sums(6);
  CHECK(e6.s1 == doctest::Approx(0.754165466958947565).epsilon(1e-15));
  CHECK(e6.s2 == doctest::Approx(0.754165466958947565).epsilon(1e-15));
  CHECK(e6.s1 == e6.s2);  // single symmetric term
  const auto e8 = error_sums(8);
  CHECK(e8.s1 == doctest::Approx(0.726751905355448468).epsilon(1e-15));
  CHECK(e8.s2 == doctest::Approx(0.890145607808206459).epsilon(1e-15));
  CHECK(e8.s1 > 0.0);
  CHECK(e8.s2 > 0.0);
  CHECK_THROWS_AS((void)error_sums(9), domain_error);
}

TEST_CASE("sums match naive long-double loops exhaustively to n=1000") {
  for (uint64_t n = 6; n <= 1000; n += 2) {
    CAPTURE(n);
    const auto want = oracle::probability_sums(n);
    REQUIRE(first_order_sum(n) ==
            doctest::Approx(static_cast<double>(want.s0)).epsilon(1e-13));
    const auto got = error_sums(n);
    REQUIRE(got.s1 == doctest::Approx(static_cast<double>(want.s1)).epsilon(1e-13));
    REQUIRE(got.s2 == doctest::Approx(static_cast<double>(want.s2)).epsilon(1e-13));
  }
}

TEST_CASE("compensated summation stays within 1e-12 of extended precision at scale") {
  for (uint64_t n : {10'000ull, 50'000ull, 100'000ull}) {
    CAPTURE(n);
    const auto want = oracle::probability_sums(n);
    const double got = first_order_sum(n);
    REQUIRE(std::fabs(got - static_cast<double>(want.s0)) / static_cast<double>(want.s0) <
            1e-12);
  }
}

TEST_CASE("hardy-littlewood partial product") {
  CHECK(hardy_littlewood_constant(3) == 0.75);          // 3*1/2^2
  CHECK(hardy_littlewood_constant(5) == 0.703125);      // exact 45/64
  CHECK(hardy_littlewood_constant(4) == 0.75);          // no prime in (3,4]
  CHECK(std::fabs(hardy_littlewood_constant(1'000'000) - 0.6601618158) < 5e-7);
  CHECK_THROWS_AS((void)hardy_littlewood_constant(2), domain_error);

  // strictly decreasing as the limit passes each odd prime
  double prev = hardy_littlewood_constant(3);
  for (uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 101ull, 1009ull}) {
    const double cur = hardy_littlewood_constant(p);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("singular series") {
  CHECK(singular_series(table(), 64) == 1.0);                   // power of two
  CHECK(singular_series(table(), 30) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(singular_series(table(), 26) == doctest::Approx(12.0 / 11.0).epsilon(1e-15));
  CHECK(singular_series(table(), 6) == 2.0);                    // 6 = 2*3
  CHECK_THROWS_AS((void)singular_series(table(), 4), domain_error);
  CHECK_THROWS_AS((void)singular_series(table(), 15), domain_error);
  CHECK_THROWS_AS((void)singular_series(table(), 1'000'002), table_range_error);
}

TEST_CASE("doubling leaves the singular series unchanged") {
  for (uint64_t n = 6; n <= 10'000; n += 2) {
    CAPTURE(n);
    REQUIRE(singular_series(table(), n) == singular_series(table(), 2 * n));
  }
}

TEST_CASE("quadrature against a fine composite-Simpson oracle") {
  CHECK(li2_integral(2.0) == 0.0);
  // mpmath quad reference values, at the documented 1e-9 * max(1, value)
  // absolute tolerance
  auto within_tol = [](double got, double want) {
    return std::fabs(got - want) <= 1e-9 * std::max(1.0, std::fabs(want));
  };
  CHECK(within_tol(li2_integral(10.0), 3.662880987415213691));
  CHECK(within_tol(li2_integral(100.0), 10.25164379057747257));
  CHECK(within_tol(li2_integral(10'000.0), 162.2412374429193246));
  CHECK(within_tol(li2_integral(1'000'000.0), 6246.975735221871079));
  for (double n : {10.0, 1000.0, 250'000.0, 1'000'000.0}) {
    CAPTURE(n);
    const double fine = oracle::li2_integral(n, 200'000);
    REQUIRE(within_tol(li2_integral(n), fine));
  }
  CHECK(li2_integral(100.0) > li2_integral(10.0));  // positive integrand
  CHECK_THROWS_AS((void)li2_integral(1.99), domain_error);
}

TEST_CASE("hl estimate composition") {
  const double c = hardy_littlewood_constant(1'000'000);
  // powers of two reduce to 2 c li2(n)
  CHECK(hl_estimate(table(), c, 64) ==
        doctest::Approx(2.0 * c * li2_integral(64.0)).epsilon(1e-15));
  // neighbouring n with/without the factor 3: singular ratio 8/3 dominates
  const double r = hl_estimate(table(), c, 30) / hl_estimate(table(), c, 32);
  CHECK(r == doctest::Approx((8.0 / 3.0) * li2_integral(30.0) / li2_integral(32.0))
                 .epsilon(1e-13));
  CHECK(r == doctest::Approx(8.0 / 3.0).epsilon(0.05));
}

TEST_CASE("breakdown fields are mutually consistent") {
  const double c = hardy_littlewood_constant(1'000'000);
  const auto b6 = estimate_breakdown(table(), c, 6);
  CHECK(b6.s0 == first_order_sum(6));
  CHECK(b6.s1 == error_sums(6).s1);
  CHECK(b6.s2 == error_sums(6).s2);
  CHECK(b6.singular == 2.0);
  CHECK(b6.strong_lower == b6.s0 - b6.s1 - b6.s2);
  CHECK(b6.strong_lower == doctest::Approx(-0.679795484227672086).epsilon(1e-12));
  CHECK(b6.hl == 2.0 * c * b6.li2 * b6.singular);

  const auto b64 = estimate_breakdown(table(), c, 64);
  CHECK(b64.singular == 1.0);
  for (uint64_t n : {100ull, 1000ull, 12'346ull}) {
    const auto b = estimate_breakdown(table(), c, n);
    CAPTURE(n);
    REQUIRE(b.hl == doctest::Approx(2.0 * c * b.li2 * b.singular).epsilon(1e-15));
    REQUIRE(b.li2 == li2_integral(static_cast<double>(n)));
  }
}

TEST_CASE("strong form check") {
  const double c = hardy_littlewood_constant(1000);
  const auto b6 = estimate_breakdown(table(), c, 6);
  CHECK(strong_form_check(1, b6));  // 1 > -0.6798
  EstimateBreakdown synthetic;
  synthetic.strong_lower = 0.5;
  CHECK_FALSE(strong_form_check(0, synthetic));  // detector fires
  synthetic.strong_lower = -0.25;
  CHECK(strong_form_check(0, synthetic));  // 0 > negative bound
}

TEST_CASE("strong-form scan equals the single-n operations bit for bit") {
  const auto series = goldbach_scan(table(), 6, 2000);
  const auto rows = strong_form_scan(series, 4);
  REQUIRE(rows.size() == series.size());
  for (size_t i = 0; i < rows.size(); i += 97) {
    const auto& row = rows[i];
    CAPTURE(row.n);
    REQUIRE(row.g == series.g_at(i));
    REQUIRE(row.s0 == first_order_sum(row.n));
    const auto e = error_sums(row.n);
    REQUIRE(row.s1 == e.s1);
    REQUIRE(row.s2 == e.s2);
    REQUIRE(row.pass == (static_cast<double>(row.g) > row.s0 - row.s1 - row.s2));
  }
}

TEST_CASE("strong-form scan is deterministic and matches the serial reference") {
  const auto series = goldbach_scan(table(), 6, 5000);
  const auto one = strong_form_scan(series, 1);
  const auto two = strong_form_scan(series, 2);
  const auto ref = reference::strong_form_scan(series);
  REQUIRE(one.size() == two.size());
  REQUIRE(one.size() == ref.size());
  for (size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one[i].s0 == two[i].s0);
    REQUIRE(one[i].margin == two[i].margin);
    REQUIRE(one[i].s0 == ref[i].s0);
    REQUIRE(one[i].s1 == ref[i].s1);
    REQUIRE(one[i].s2 == ref[i].s2);
    REQUIRE(one[i].margin == ref[i].margin);
  }
}

TEST_CASE("chebyshev point measurements") {
  const auto r = chebyshev_scan(table(), 2, 200);
  // r(2) = ln 2 / 2 misses the lower bound
  bool found2 = false, found113 = false;
  for (const auto& v : r.violations) {
    if (v.n == 2) {
      found2 = true;
      CHECK_FALSE(v.upper);
      CHECK(v.ratio == doctest::Approx(0.346573590279972655).epsilon(1e-15));
    }
    if (v.n == 113) {
      found113 = true;
      CHECK(v.upper);
      CHECK(v.ratio == doctest::Approx(1.255058712932479797).epsilon(1e-15));
    }
  }
  CHECK(found2);
  CHECK(found113);
  CHECK(r.min_ratio == doctest::Approx(0.346573590279972655).epsilon(1e-15));
  CHECK(r.argmin == 2);
}

TEST_CASE("chebyshev violations are a small-n phenomenon") {
  const auto r = chebyshev_scan(table(), 100'000, 200'000);
  CHECK(r.violations.empty());
  CHECK(r.min_ratio > 7.0 / 8.0);
  CHECK(r.max_ratio < 9.0 / 8.0);
}

TEST_CASE("chebyshev scan matches the serial reference exactly") {
  const auto a = chebyshev_scan(table(), 2, 150'000, 4);
  const auto b = reference::chebyshev_scan(table(), 2, 150'000);
  CHECK(a.min_ratio == b.min_ratio);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.argmin == b.argmin);
  CHECK(a.argmax == b.argmax);
  REQUIRE(a.violations.size() == b.violations.size());
  for (size_t i = 0; i < a.violations.size(); ++i) {
    REQUIRE(a.violations[i].n == b.violations[i].n);
    REQUIRE(a.violations[i].ratio == b.violations[i].ratio);
    REQUIRE(a.violations[i].upper == b.violations[i].upper);
  }
  const auto c = chebyshev_scan(table(), 2, 150'000, 1);
  CHECK(c.violations.size() == a.violations.size());
  CHECK(c.min_ratio == a.min_ratio);
  CHECK(c.max_ratio == a.max_ratio);
}

TEST_CASE("chebyshev range validation") {
  CHECK_THROWS_AS((void)chebyshev_scan(table(), 1, 10), domain_error);
  CHECK_THROWS_AS((void)chebyshev_scan(table(), 10, 4), domain_error);
  CHECK_THROWS_AS((void)chebyshev_scan(table(), 2, 1'000'001), table_range_error);
}
