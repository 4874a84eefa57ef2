#include "goldbach/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "goldbach/errors.hpp"

namespace goldbach {

namespace {

constexpr double kCalibrationBackoff = 1e-12;
constexpr double kStepTolerance = 1e-10;
constexpr int kMaxIterations = 100;

double sum_squared_residuals(std::span<const LogPoint> pts, double alpha, double beta) {
  double sse = 0.0;
  for (const auto& p : pts) {
    const double r = p.log_g - alpha * std::pow(p.x, beta);
    sse += r * r;
  }
  return sse;
}

}  // namespace

Envelope extract_envelope(const PartitionSeries& series) {
  if (series.size() == 0 || series.end - series.start < 8) {
    throw domain_error("envelope extraction needs a series spanning at least 8, got [" +
                       std::to_string(series.start) + ", " + std::to_string(series.end) + "]");
  }
  Envelope env;
  env.source_start = series.start;
  env.source_end = series.end;

  // Lower records: strictly below everything to the right. Scanned from
  // the right so membership is one comparison against the running min.
  uint32_t best = std::numeric_limits<uint32_t>::max();
  for (size_t i = series.size(); i-- > 0;) {
    const uint32_t g = series.g_at(i);
    if (g < best) {
      env.lower.push_back({series.n_at(i), g});
      best = g;
    }
  }
  std::reverse(env.lower.begin(), env.lower.end());

  // Upper records: strictly above everything to the left.
  bool any = false;
  uint32_t top = 0;
  for (size_t i = 0; i < series.size(); ++i) {
    const uint32_t g = series.g_at(i);
    if (!any || g > top) {
      env.upper.push_back({series.n_at(i), g});
      top = g;
      any = true;
    }
  }
  return env;
}

FitResult fit_exponential(std::span<const RecordPoint> points, uint32_t min_g,
                          std::vector<double>* objective_trace) {
  const uint32_t floor_g = std::max<uint32_t>(min_g, 2);
  std::vector<LogPoint> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    if (p.g >= floor_g) {
      pts.push_back({static_cast<double>(p.n), std::log(static_cast<double>(p.g))});
    }
  }
  return fit_log_points(pts, objective_trace);
}

FitResult fit_log_points(std::span<const LogPoint> points, std::vector<double>* objective_trace) {
  if (points.size() < 3) {
    throw insufficient_data_error("fit needs at least 3 usable points, got " +
                                  std::to_string(points.size()));
  }
  for (const auto& p : points) {
    if (!(p.log_g > 0.0) || !(p.x > 1.0)) {
      throw insufficient_data_error("fit points need x > 1 and ln g > 0");
    }
  }

  // ln ln g = ln alpha + beta ln x: ordinary least squares for the start.
  double su = 0, sz = 0, suu = 0, suz = 0;
  const double m = static_cast<double>(points.size());
  for (const auto& p : points) {
    const double u = std::log(p.x);
    const double z = std::log(p.log_g);
    su += u;
    sz += z;
    suu += u * u;
    suz += u * z;
  }
  double beta = (m * suz - su * sz) / (m * suu - su * su);
  double alpha = std::exp((sz - beta * su) / m);

  double sse = sum_squared_residuals(points, alpha, beta);
  if (objective_trace) objective_trace->push_back(sse);

  FitResult result;
  bool converged = false;
  int iter = 0;
  while (iter < kMaxIterations) {
    ++iter;
    // Normal equations for residuals r_i = y_i - alpha w_i, w_i = x_i^beta:
    //   J_i = (-w_i, -alpha w_i ln x_i)
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (const auto& p : points) {
      const double w = std::pow(p.x, beta);
      const double lx = std::log(p.x);
      const double r = p.log_g - alpha * w;
      const double j2 = alpha * w * lx;
      a11 += w * w;
      a12 += w * j2;
      a22 += j2 * j2;
      b1 += w * r;
      b2 += j2 * r;
    }
    const double det = a11 * a22 - a12 * a12;
    if (!(std::fabs(det) > 0.0) || !std::isfinite(det)) break;
    const double d_alpha = (a22 * b1 - a12 * b2) / det;
    const double d_beta = (a11 * b2 - a12 * b1) / det;

    const double full_rel =
        std::max(std::fabs(d_alpha) / std::max(std::fabs(alpha), 1e-300),
                 std::fabs(d_beta) / std::max(std::fabs(beta), 1e-300));
    if (full_rel < kStepTolerance) {
      converged = true;  // the Newton step itself is below tolerance
      break;
    }

    // Halve the step until it descends.
    double t = 1.0;
    bool accepted = false;
    double trial_sse = 0.0;
    double trial_alpha = alpha, trial_beta = beta;
    while (t >= 0x1p-40) {
      trial_alpha = alpha + t * d_alpha;
      trial_beta = beta + t * d_beta;
      trial_sse = sum_squared_residuals(points, trial_alpha, trial_beta);
      if (trial_sse < sse) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // stalled at a floating-point minimum
    alpha = trial_alpha;
    beta = trial_beta;
    sse = trial_sse;
    if (objective_trace) objective_trace->push_back(sse);
    if (full_rel * t < kStepTolerance) {
      converged = true;
      break;
    }
  }

  result.alpha = alpha;
  result.beta = beta;
  result.rms_log_residual = std::sqrt(sse / m);
  result.points_used = static_cast<int>(points.size());
  result.converged = converged;
  result.iterations = iter;
  return result;
}

double calibrate_alpha(std::span<const RecordPoint> points, double beta, Side side,
                       uint64_t n_min) {
  bool any = false;
  double extreme = 0.0;
  for (const auto& p : points) {
    if (p.n < n_min) continue;
    if (p.g == 0) throw domain_error("calibration requires G > 0 at every point");
    const double ratio = std::log(static_cast<double>(p.g)) /
                         std::pow(static_cast<double>(p.n), beta);
    if (!any) {
      extreme = ratio;
      any = true;
    } else if (side == Side::kLower ? ratio < extreme : ratio > extreme) {
      extreme = ratio;
    }
  }
  if (!any) {
    throw insufficient_data_error("no points at or above n_min=" + std::to_string(n_min));
  }
  const double alpha = side == Side::kLower ? extreme * (1.0 - kCalibrationBackoff)
                                            : extreme * (1.0 + kCalibrationBackoff);
  if (!(alpha > 0.0)) {
    throw domain_error("calibration produced alpha <= 0 (a point with G <= 1 in range)");
  }
  return alpha;
}

ViolationReport bounding_violations(const FitResult& fit, const PartitionSeries& series,
                                    Side side, uint64_t n_min) {
  ViolationReport report;
  for (size_t i = 0; i < series.size(); ++i) {
    const uint64_t n = series.n_at(i);
    if (n < n_min) continue;
    const uint32_t g = series.g_at(i);
    const double fitted_log = fit.alpha * std::pow(static_cast<double>(n), fit.beta);
    bool violated;
    if (g == 0) {
      violated = side == Side::kLower;  // exp(..) > 0 = G; an upper bound holds vacuously
    } else {
      const double lg = std::log(static_cast<double>(g));
      violated = side == Side::kLower ? fitted_log >= lg : fitted_log <= lg;
    }
    if (violated) {
      ++report.count;
      report.offenders.push_back(n);
    }
  }
  return report;
}

LogCurve curve_from_fit(const FitResult& fit) {
  const double alpha = fit.alpha;
  const double beta = fit.beta;
  return {[alpha, beta](double x) { return alpha * std::pow(x, beta); },
          std::numeric_limits<double>::min(), std::numeric_limits<double>::infinity()};
}

LogCurve curve_from_records(std::span<const RecordPoint> records) {
  if (records.size() < 2) {
    throw domain_error("interpolation needs at least 2 record points");
  }
  std::vector<double> lx(records.size()), lg(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    if (i > 0 && records[i].n <= records[i - 1].n) {
      throw domain_error("record points must have strictly ascending n");
    }
    if (records[i].g == 0) throw domain_error("record points must have G > 0");
    lx[i] = std::log(static_cast<double>(records[i].n));
    lg[i] = std::log(static_cast<double>(records[i].g));
  }
  const double lo = static_cast<double>(records.front().n);
  const double hi = static_cast<double>(records.back().n);
  auto eval = [lx = std::move(lx), lg = std::move(lg)](double x) {
    const double u = std::log(x);
    size_t hi_idx = static_cast<size_t>(
        std::lower_bound(lx.begin(), lx.end(), u) - lx.begin());
    if (hi_idx == 0) return lg.front();
    if (hi_idx == lx.size()) hi_idx = lx.size() - 1;
    const size_t lo_idx = hi_idx - 1;
    if (u == lx[hi_idx]) return lg[hi_idx];  // exact at records
    const double t = (u - lx[lo_idx]) / (lx[hi_idx] - lx[lo_idx]);
    return lg[lo_idx] + t * (lg[hi_idx] - lg[lo_idx]);
  };
  return {std::move(eval), lo, hi};
}

ResidualReport functional_residual(const LogCurve& f, double a, double b,
                                   std::span<const double> xs) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw domain_error("functional_residual requires a, b > 0");
  }
  auto check_domain = [&f](double v, const char* label) {
    if (!(v >= f.domain_lo) || !(v <= f.domain_hi)) {
      throw domain_error(std::string("functional_residual: ") + label + "=" +
                         std::to_string(v) + " is outside the curve domain [" +
                         std::to_string(f.domain_lo) + ", " + std::to_string(f.domain_hi) + "]");
    }
  };
  check_domain(a, "a");
  check_domain(b, "b");

  ResidualReport report;
  double sum_abs = 0.0, sum_norm = 0.0;
  for (const double x : xs) {
    check_domain(a * x, "a*x");
    check_domain(b * x, "b*x");
    const double left = f.log_value(a * x) - f.log_value(a);
    const double right = f.log_value(b * x) - f.log_value(b);
    const double d = std::fabs(left - right);
    const double denom = std::fabs(left);
    const double norm = denom > 0.0 ? d / denom : 0.0;
    report.max_abs = std::max(report.max_abs, d);
    report.max_norm = std::max(report.max_norm, norm);
    sum_abs += d;
    sum_norm += norm;
    ++report.evaluated;
  }
  if (report.evaluated > 0) {
    report.mean_abs = sum_abs / static_cast<double>(report.evaluated);
    report.mean_norm = sum_norm / static_cast<double>(report.evaluated);
  }
  return report;
}

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || points_per_decade < 1) {
    throw domain_error("log_grid requires 0 < lo <= hi and points_per_decade >= 1");
  }
  std::vector<double> xs;
  const double step = std::pow(10.0, 1.0 / points_per_decade);
  const double cutoff = hi * (1.0 + 1e-12);
  for (double x = lo; x <= cutoff; x *= step) xs.push_back(std::min(x, hi));
  return xs;
}

}  // namespace goldbach
