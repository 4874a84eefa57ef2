// Command-line workbench: exact Goldbach partition counts, analytic
// estimates, Chebyshev ratio measurements and comet-envelope fitting.
//
// Exit codes: 0 success, 1 usage/domain error, 2 capacity guard,
// 3 a Goldbach counterexample (G(n) = 0) was encountered.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "goldbach/analysis.hpp"
#include "goldbach/estimators.hpp"
#include "goldbach/io.hpp"
#include "goldbach/partition.hpp"
#include "goldbach/sieve.hpp"

namespace {

using namespace goldbach;

// Thread count: explicit --threads wins; otherwise all available cores,
// capped by the GOLDBACH_MAX_THREADS environment variable if set.
int resolve_threads(int requested) {
  if (requested > 0) return requested;
  int threads = omp_get_max_threads();
  if (const char* cap_env = std::getenv("GOLDBACH_MAX_THREADS")) {
    const int cap = std::atoi(cap_env);
    if (cap >= 1 && cap < threads) threads = cap;
  }
  return threads;
}

// Writes to the --out path when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw domain_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domain_error("cannot open input file: " + path);
  return in;
}

void require_even(uint64_t v, const char* what) {
  if (v % 2 != 0) {
    throw domain_error(std::string(what) + " must be even, got " + std::to_string(v));
  }
}

int report_counterexamples(const std::vector<uint64_t>& zeros) {
  if (zeros.empty()) return 0;
  std::fprintf(stderr, "error:counterexample:GOLDBACH COUNTEREXAMPLE FOUND: G(n) = 0 for");
  for (uint64_t n : zeros) std::fprintf(stderr, " %llu", static_cast<unsigned long long>(n));
  std::fprintf(stderr, "\n");
  return 3;
}

struct GridSpec {
  double lo = 0;
  double hi = 0;
  int ppd = 20;
};

GridSpec parse_grid(const std::string& spec) {
  GridSpec g;
  char colon1 = 0, colon2 = 0;
  std::istringstream in(spec);
  if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.ppd) || colon1 != ':' || colon2 != ':') {
    throw domain_error("grid spec must be LO:HI:POINTS_PER_DECADE, got " + spec);
  }
  return g;
}

double recompute_rms(std::span<const RecordPoint> points, uint32_t min_g, const FitResult& fit) {
  double sse = 0.0;
  int m = 0;
  for (const auto& p : points) {
    if (p.g < std::max<uint32_t>(min_g, 2)) continue;
    const double r = std::log(static_cast<double>(p.g)) -
                     fit.alpha * std::pow(static_cast<double>(p.n), fit.beta);
    sse += r * r;
    ++m;
  }
  return m > 0 ? std::sqrt(sse / m) : 0.0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goldbach partition workbench: exact counts, analytic estimates, "
               "envelope extraction and exp(a*x^b) fits",
               "goldbach"};
  app.require_subcommand(1);
  app.footer("Thread default is every available core, capped by GOLDBACH_MAX_THREADS.");

  int threads_opt = 0;
  app.add_option("--threads", threads_opt, "Worker threads (default: all available)")
      ->check(CLI::PositiveNumber);

  // sieve-info
  auto* sieve_cmd = app.add_subcommand("sieve-info", "Build a prime table and report pi(limit)");
  uint64_t sieve_limit = 100'000;
  sieve_cmd->add_option("--limit", sieve_limit, "Table limit (inclusive)")->capture_default_str();

  // count
  auto* count_cmd = app.add_subcommand("count", "Exact G(n) for one even n");
  uint64_t count_n = 0;
  count_cmd->add_option("--n", count_n, "Even n >= 4")->required();

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "Exact G(n) over an even range");
  uint64_t scan_start = 0, scan_end = 0;
  std::string scan_format = "csv", scan_out;
  scan_cmd->add_option("--start", scan_start, "First even n")->required();
  scan_cmd->add_option("--end", scan_end, "Last even n")->required();
  scan_cmd->add_option("--format", scan_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  scan_cmd->add_option("--out", scan_out, "Output file (default stdout)");

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "Smallest prime pair for one even n");
  uint64_t witness_n = 0;
  witness_cmd->add_option("--n", witness_n, "Even n >= 4")->required();

  // estimate
  auto* estimate_cmd = app.add_subcommand("estimate", "Analytic estimate breakdown at one n");
  uint64_t estimate_n = 0, estimate_prime_limit = 1'000'000;
  std::string estimate_format = "json";
  estimate_cmd->add_option("--n", estimate_n, "Even n >= 6")->required();
  estimate_cmd->add_option("--prime-limit", estimate_prime_limit,
                           "Prime cutoff for the Hardy-Littlewood constant")
      ->capture_default_str();
  estimate_cmd->add_option("--format", estimate_format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // check-strong
  auto* strong_cmd =
      app.add_subcommand("check-strong", "Strong-form margins over an even range (CSV)");
  uint64_t strong_start = 0, strong_end = 0;
  std::string strong_out;
  strong_cmd->add_option("--start", strong_start, "First even n (>= 6)")->required();
  strong_cmd->add_option("--end", strong_end, "Last even n")->required();
  strong_cmd->add_option("--out", strong_out, "Output file (default stdout)");

  // check-chebyshev
  auto* cheb_cmd =
      app.add_subcommand("check-chebyshev", "pi(n) ln n / n extrema and bound violations");
  uint64_t cheb_start = 0, cheb_end = 0;
  std::string cheb_out;
  cheb_cmd->add_option("--start", cheb_start, "First n (>= 2)")->required();
  cheb_cmd->add_option("--end", cheb_end, "Last n")->required();
  cheb_cmd->add_option("--out", cheb_out, "Output file (default stdout)");

  // constant
  auto* constant_cmd =
      app.add_subcommand("constant", "Partial Hardy-Littlewood constant product");
  uint64_t constant_prime_limit = 1'000'000;
  constant_cmd
      ->add_option("--prime-limit", constant_prime_limit, "Include odd primes up to this bound")
      ->capture_default_str();

  // envelope
  auto* envelope_cmd =
      app.add_subcommand("envelope", "Extract record envelopes from a scan CSV");
  std::string envelope_in, envelope_out;
  envelope_cmd->add_option("--in", envelope_in, "Input scan CSV")->required();
  envelope_cmd->add_option("--out", envelope_out, "Output JSON file (default stdout)");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit ln G ~ alpha n^beta to one envelope side");
  std::string fit_in, fit_side = "lower", fit_out;
  uint64_t fit_min_n = 16;
  bool fit_calibrate = false;
  fit_cmd->add_option("--in", fit_in, "Input envelope JSON")->required();
  fit_cmd->add_option("--side", fit_side, "Envelope side")
      ->check(CLI::IsMember({"lower", "upper"}))
      ->capture_default_str();
  fit_cmd->add_option("--min-n", fit_min_n, "Ignore records below this n")->capture_default_str();
  fit_cmd->add_flag("--calibrate", fit_calibrate,
                    "Rescale alpha so the curve bounds the records on n >= min-n");
  fit_cmd->add_option("--out", fit_out, "Output JSON file (default stdout)");

  // funceq
  auto* funceq_cmd = app.add_subcommand(
      "funceq", "Residuals of f(ax)/f(a) = f(bx)/f(b) for a fit or envelope curve");
  std::string funceq_in, funceq_side = "lower", funceq_grid, funceq_out;
  double funceq_a = 0, funceq_b = 0;
  funceq_cmd->add_option("--in", funceq_in, "Input fit JSON or envelope JSON")->required();
  funceq_cmd->add_option("--a", funceq_a, "Scale a > 0")->required();
  funceq_cmd->add_option("--b", funceq_b, "Scale b > 0")->required();
  funceq_cmd->add_option("--side", funceq_side, "Envelope side (envelope input only)")
      ->check(CLI::IsMember({"lower", "upper"}))
      ->capture_default_str();
  funceq_cmd->add_option("--grid", funceq_grid,
                         "x grid as LO:HI:POINTS_PER_DECADE (default: 20/decade across the "
                         "evaluable range)");
  funceq_cmd->add_option("--out", funceq_out, "Output JSON file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error:usage:%s\n", e.what());
    return 1;
  }

  try {
    const int threads = resolve_threads(threads_opt);

    if (app.got_subcommand(sieve_cmd)) {
      const auto t0 = std::chrono::steady_clock::now();
      const PrimeTable t = PrimeTable::build(sieve_limit);
      const auto t1 = std::chrono::steady_clock::now();
      const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      std::printf("limit %llu\n", static_cast<unsigned long long>(t.limit()));
      std::printf("pi %llu\n", static_cast<unsigned long long>(t.prime_count(t.limit())));
      std::printf("build_ms %.3f\n", ms);
      return 0;
    }

    if (app.got_subcommand(count_cmd)) {
      require_even(count_n, "--n");
      if (count_n < 4) throw domain_error("--n must be >= 4");
      const PrimeTable t = PrimeTable::build(count_n);
      std::printf("%llu %llu\n", static_cast<unsigned long long>(count_n),
                  static_cast<unsigned long long>(goldbach_count(t, count_n)));
      return 0;
    }

    if (app.got_subcommand(scan_cmd)) {
      const PrimeTable t = PrimeTable::build(std::max<uint64_t>(scan_end, 2));
      const PartitionSeries series = goldbach_scan(t, scan_start, scan_end, threads);
      Output out(scan_out);
      if (scan_format == "csv") {
        write_scan_csv(out.stream(), series);
      } else {
        write_scan_json(out.stream(), series);
      }
      out.stream().flush();
      return report_counterexamples(verify_positive(series));
    }

    if (app.got_subcommand(witness_cmd)) {
      require_even(witness_n, "--n");
      if (witness_n < 4) throw domain_error("--n must be >= 4");
      const PrimeTable t = PrimeTable::build(witness_n);
      const auto w = goldbach_witness(t, witness_n);
      if (!w.has_value()) {
        std::fprintf(stderr,
                     "error:counterexample:GOLDBACH COUNTEREXAMPLE FOUND: no prime pair sums "
                     "to %llu\n",
                     static_cast<unsigned long long>(witness_n));
        return 3;
      }
      std::printf("%llu %llu %llu\n", static_cast<unsigned long long>(witness_n),
                  static_cast<unsigned long long>(w->p), static_cast<unsigned long long>(w->q));
      return 0;
    }

    if (app.got_subcommand(estimate_cmd)) {
      require_even(estimate_n, "--n");
      const double c = hardy_littlewood_constant(estimate_prime_limit);
      const PrimeTable t = PrimeTable::build(std::max<uint64_t>(estimate_n, 2));
      const EstimateBreakdown b = estimate_breakdown(t, c, estimate_n);
      if (estimate_format == "json") {
        write_breakdown_json(std::cout, b);
      } else {
        write_breakdown_csv(std::cout, b);
      }
      return 0;
    }

    if (app.got_subcommand(strong_cmd)) {
      require_even(strong_start, "--start");
      require_even(strong_end, "--end");
      if (strong_start < 6) throw domain_error("--start must be >= 6 for strong-form sums");
      const PrimeTable t = PrimeTable::build(std::max<uint64_t>(strong_end, 2));
      const PartitionSeries series = goldbach_scan(t, strong_start, strong_end, threads);
      const auto rows = strong_form_scan(series, threads);
      Output out(strong_out);
      write_strong_csv(out.stream(), rows);
      out.stream().flush();
      return report_counterexamples(verify_positive(series));
    }

    if (app.got_subcommand(cheb_cmd)) {
      const PrimeTable t = PrimeTable::build(std::max<uint64_t>(cheb_end, 2));
      const ChebyshevReport report = chebyshev_scan(t, cheb_start, cheb_end, threads);
      Output out(cheb_out);
      write_chebyshev_report(out.stream(), report);
      return 0;
    }

    if (app.got_subcommand(constant_cmd)) {
      std::printf("%.12g\n", hardy_littlewood_constant(constant_prime_limit));
      return 0;
    }

    if (app.got_subcommand(envelope_cmd)) {
      auto in = open_input(envelope_in);
      const PartitionSeries series = read_scan_csv(in);
      const Envelope env = extract_envelope(series);
      Output out(envelope_out);
      write_envelope_json(out.stream(), env);
      return 0;
    }

    if (app.got_subcommand(fit_cmd)) {
      auto in = open_input(fit_in);
      const Envelope env = read_envelope_json(in);
      const auto& records = fit_side == "lower" ? env.lower : env.upper;
      std::vector<RecordPoint> usable;
      for (const auto& r : records) {
        if (r.n >= fit_min_n) usable.push_back(r);
      }
      FitResult fit = fit_exponential(usable, 2);
      if (fit_calibrate) {
        // The extreme of ln g / n^beta over a series is always attained at
        // a record, so calibrating on the records equals calibrating on
        // the full series they came from.
        fit.alpha = calibrate_alpha(usable, fit.beta,
                                    fit_side == "lower" ? Side::kLower : Side::kUpper,
                                    fit_min_n);
        fit.rms_log_residual = recompute_rms(usable, 2, fit);
      }
      Output out(fit_out);
      write_fit_json(out.stream(), fit);
      return 0;
    }

    if (app.got_subcommand(funceq_cmd)) {
      if (!(funceq_a > 0.0) || !(funceq_b > 0.0)) {
        throw domain_error("--a and --b must be positive");
      }
      auto in = open_input(funceq_in);
      std::stringstream buffer;
      buffer << in.rdbuf();
      LogCurve curve;
      std::vector<RecordPoint> records;  // keeps envelope storage alive
      if (buffer.str().find("\"alpha\"") != std::string::npos) {
        std::istringstream fit_in_stream(buffer.str());
        curve = curve_from_fit(read_fit_json(fit_in_stream));
      } else {
        std::istringstream env_in_stream(buffer.str());
        const Envelope env = read_envelope_json(env_in_stream);
        records = funceq_side == "lower" ? env.lower : env.upper;
        curve = curve_from_records(records);
      }
      std::vector<double> xs;
      if (!funceq_grid.empty()) {
        const GridSpec g = parse_grid(funceq_grid);
        xs = log_grid(g.lo, g.hi, g.ppd);
      } else if (std::isfinite(curve.domain_hi)) {
        const double lo = curve.domain_lo / std::min(funceq_a, funceq_b);
        const double hi = curve.domain_hi / std::max(funceq_a, funceq_b);
        if (!(lo <= hi)) {
          throw domain_error("no x satisfies the curve domain for these a, b; pass --grid");
        }
        xs = log_grid(std::max(lo, 1e-12), hi, 20);
      } else {
        xs = log_grid(1.0, 10'000.0, 20);
      }
      const ResidualReport report = functional_residual(curve, funceq_a, funceq_b, xs);
      Output out(funceq_out);
      write_residual_json(out.stream(), funceq_a, funceq_b, report);
      return 0;
    }

    std::fprintf(stderr, "error:usage:no subcommand selected\n");
    return 1;
  } catch (const capacity_error& e) {
    std::fprintf(stderr, "error:capacity:%s\n", e.what());
    return 2;
  } catch (const domain_error& e) {
    std::fprintf(stderr, "error:domain:%s\n", e.what());
    return 1;
  } catch (const table_range_error& e) {
    std::fprintf(stderr, "error:domain:%s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error:internal:%s\n", e.what());
    return 1;
  }
}
