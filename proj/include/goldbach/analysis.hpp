#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "goldbach/partition.hpp"

namespace goldbach {

struct RecordPoint {
  uint64_t n = 0;
  uint32_t g = 0;
};

// Strict-dominance records of a series. A lower record is below every
// later point, an upper record above every earlier one; the g values
// along each list are therefore strictly increasing. The last point of
// the range is always a lower record and the first always an upper
// record (their dominance conditions are vacuous).
struct Envelope {
  std::vector<RecordPoint> lower;
  std::vector<RecordPoint> upper;
  uint64_t source_start = 0;
  uint64_t source_end = 0;
};

// Parameters of ln g ~ alpha * n^beta fitted by damped Gauss-Newton.
struct FitResult {
  double alpha = 0;
  double beta = 0;
  double rms_log_residual = 0;
  int points_used = 0;
  bool converged = false;
  int iterations = 0;
};

// A sample for fitting: log_g = ln G(x). Lets synthetic data enter the
// fit without rounding through an integer count.
struct LogPoint {
  double x = 0;
  double log_g = 0;
};

enum class Side { kLower, kUpper };

struct ViolationReport {
  uint64_t count = 0;
  std::vector<uint64_t> offenders;
};

// Curve carried in log space with an evaluable x-domain.
struct LogCurve {
  std::function<double(double)> log_value;
  double domain_lo = 0;
  double domain_hi = 0;
};

// max / mean over the grid of |[ln f(ax) - ln f(a)] - [ln f(bx) - ln f(b)]|,
// raw and normalized by |ln f(ax) - ln f(a)|.
struct ResidualReport {
  double max_abs = 0;
  double mean_abs = 0;
  double max_norm = 0;
  double mean_norm = 0;
  size_t evaluated = 0;
};

// Strict-dominance record extraction. Requires end - start >= 8.
Envelope extract_envelope(const PartitionSeries& series);

// Minimize sum (ln g_i - alpha * x_i^beta)^2 by damped Gauss-Newton,
// initialized from the linear regression of ln ln g on ln x. Points with
// g < max(min_g, 2) are dropped (ln ln g must exist); fewer than 3
// survivors raise insufficient_data_error. Convergence means a relative
// parameter step below 1e-10 within 100 iterations; running out of
// iterations or of descent directions reports converged = false rather
// than throwing. Accepted steps never increase the objective; pass
// objective_trace to observe it.
FitResult fit_exponential(std::span<const RecordPoint> points, uint32_t min_g = 2,
                          std::vector<double>* objective_trace = nullptr);

// Same fit on presampled log counts (all log_g must be > 0).
FitResult fit_log_points(std::span<const LogPoint> points,
                         std::vector<double>* objective_trace = nullptr);

// Rescale alpha so exp(alpha n^beta) bounds the given points on n >= n_min:
// the extremal ln g / n^beta over the points, backed off by a relative
// 1e-12 so the bound holds strictly at the binding point. Points with
// n < n_min are ignored. Throws if no point qualifies or the result would
// not be a positive alpha (a point with g <= 1 on the lower side).
double calibrate_alpha(std::span<const RecordPoint> points, double beta, Side side,
                       uint64_t n_min);

// Count even n >= n_min in the series where the fitted curve fails the
// strict bound: exp(alpha n^beta) >= G(n) on the lower side, <= G(n) on
// the upper side. A measurement, not an assertion.
ViolationReport bounding_violations(const FitResult& fit, const PartitionSeries& series,
                                    Side side, uint64_t n_min);

LogCurve curve_from_fit(const FitResult& fit);

// Piecewise-linear interpolation of (ln n, ln g) through the records;
// exact at every record point. Requires >= 2 records with ascending n.
LogCurve curve_from_records(std::span<const RecordPoint> records);

// Residuals of the scaling relation f(ax)/f(a) = f(bx)/f(b) over xs.
// Every a*x, b*x (and a, b themselves) must lie inside the curve domain;
// offending values are named in the error.
ResidualReport functional_residual(const LogCurve& f, double a, double b,
                                   std::span<const double> xs);

// Logarithmically spaced grid from lo to hi at points_per_decade.
std::vector<double> log_grid(double lo, double hi, int points_per_decade);

}  // namespace goldbach
