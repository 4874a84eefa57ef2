#include "goldbach/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "goldbach/errors.hpp"

namespace goldbach {

namespace {

using nlohmann::json;

json parse_json(std::istream& in, const char* what) {
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw domain_error(std::string("malformed ") + what + ": " + e.what());
  }
  return j;
}

}  // namespace

std::string format_real_csv(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  const int exp10 = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  int decimals = 11 - exp10;
  if (decimals < 0) decimals = 0;
  if (decimals > 330) decimals = 330;  // subnormal floor
  char buf[400];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string format_real_json(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void write_scan_csv(std::ostream& out, const PartitionSeries& series) {
  out << "n,G\n";
  for (size_t i = 0; i < series.size(); ++i) {
    out << series.n_at(i) << ',' << series.g_at(i) << '\n';
  }
}

PartitionSeries read_scan_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "n,G") {
    throw domain_error("scan CSV must start with header \"n,G\"");
  }
  PartitionSeries series;
  bool first = true;
  uint64_t expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos) throw domain_error("scan CSV row missing comma: " + line);
    uint64_t n = 0;
    unsigned long g = 0;
    try {
      n = std::stoull(line.substr(0, comma));
      g = std::stoul(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw domain_error("scan CSV row is not numeric: " + line);
    }
    if (first) {
      if (n % 2 != 0) throw domain_error("scan CSV must start at an even n");
      series.start = n;
      expected = n;
      first = false;
    }
    if (n != expected) {
      throw domain_error("scan CSV rows must cover consecutive even n; expected " +
                         std::to_string(expected) + ", got " + std::to_string(n));
    }
    series.counts.push_back(static_cast<uint32_t>(g));
    series.end = n;
    expected = n + 2;
  }
  if (series.counts.empty()) throw domain_error("scan CSV has no data rows");
  return series;
}

void write_scan_json(std::ostream& out, const PartitionSeries& series) {
  out << "{\"start\":" << series.start << ",\"end\":" << series.end << ",\"entries\":[";
  for (size_t i = 0; i < series.size(); ++i) {
    if (i) out << ',';
    out << '[' << series.n_at(i) << ',' << series.g_at(i) << ']';
  }
  out << "]}\n";
}

namespace {

void write_record_list(std::ostream& out, const std::vector<RecordPoint>& records) {
  out << '[';
  for (size_t i = 0; i < records.size(); ++i) {
    if (i) out << ',';
    out << '[' << records[i].n << ',' << records[i].g << ']';
  }
  out << ']';
}

std::vector<RecordPoint> read_record_list(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw domain_error(std::string("envelope JSON needs array \"") + key + "\"");
  }
  std::vector<RecordPoint> records;
  for (const auto& e : j[key]) {
    if (!e.is_array() || e.size() != 2) {
      throw domain_error(std::string("envelope JSON \"") + key + "\" entries must be [n, g]");
    }
    records.push_back({e[0].get<uint64_t>(), e[1].get<uint32_t>()});
  }
  return records;
}

}  // namespace

void write_envelope_json(std::ostream& out, const Envelope& env) {
  out << "{\"source_range\":[" << env.source_start << ',' << env.source_end << "],\"lower\":";
  write_record_list(out, env.lower);
  out << ",\"upper\":";
  write_record_list(out, env.upper);
  out << "}\n";
}

Envelope read_envelope_json(std::istream& in) {
  const json j = parse_json(in, "envelope JSON");
  Envelope env;
  if (!j.contains("source_range") || !j["source_range"].is_array() ||
      j["source_range"].size() != 2) {
    throw domain_error("envelope JSON needs \"source_range\":[start,end]");
  }
  env.source_start = j["source_range"][0].get<uint64_t>();
  env.source_end = j["source_range"][1].get<uint64_t>();
  env.lower = read_record_list(j, "lower");
  env.upper = read_record_list(j, "upper");
  return env;
}

void write_fit_json(std::ostream& out, const FitResult& fit) {
  out << "{\"alpha\":" << format_real_json(fit.alpha) << ",\"beta\":" << format_real_json(fit.beta)
      << ",\"rms_log_residual\":" << format_real_json(fit.rms_log_residual)
      << ",\"points_used\":" << fit.points_used
      << ",\"converged\":" << (fit.converged ? "true" : "false")
      << ",\"iterations\":" << fit.iterations << "}\n";
}

FitResult read_fit_json(std::istream& in) {
  const json j = parse_json(in, "fit JSON");
  FitResult fit;
  try {
    fit.alpha = j.at("alpha").get<double>();
    fit.beta = j.at("beta").get<double>();
    fit.rms_log_residual = j.value("rms_log_residual", 0.0);
    fit.points_used = j.value("points_used", 0);
    fit.converged = j.value("converged", false);
    fit.iterations = j.value("iterations", 0);
  } catch (const json::exception& e) {
    throw domain_error(std::string("fit JSON missing fields: ") + e.what());
  }
  return fit;
}

void write_breakdown_json(std::ostream& out, const EstimateBreakdown& b) {
  out << "{\"n\":" << b.n << ",\"s0\":" << format_real_json(b.s0)
      << ",\"s1\":" << format_real_json(b.s1) << ",\"s2\":" << format_real_json(b.s2)
      << ",\"singular\":" << format_real_json(b.singular)
      << ",\"li2\":" << format_real_json(b.li2) << ",\"hl\":" << format_real_json(b.hl)
      << ",\"strong_lower\":" << format_real_json(b.strong_lower) << "}\n";
}

void write_breakdown_csv(std::ostream& out, const EstimateBreakdown& b) {
  out << "n,s0,s1,s2,singular,li2,hl,strong_lower\n";
  out << b.n << ',' << format_real_csv(b.s0) << ',' << format_real_csv(b.s1) << ','
      << format_real_csv(b.s2) << ',' << format_real_csv(b.singular) << ','
      << format_real_csv(b.li2) << ',' << format_real_csv(b.hl) << ','
      << format_real_csv(b.strong_lower) << '\n';
}

void write_strong_csv(std::ostream& out, const std::vector<StrongFormRow>& rows) {
  out << "n,G,s0,s1,s2,margin,pass\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.g << ',' << format_real_csv(r.s0) << ',' << format_real_csv(r.s1)
        << ',' << format_real_csv(r.s2) << ',' << format_real_csv(r.margin) << ','
        << (r.pass ? '1' : '0') << '\n';
  }
}

void write_chebyshev_report(std::ostream& out, const ChebyshevReport& report) {
  out << "# min_ratio " << format_real_csv(report.min_ratio) << " at n=" << report.argmin << '\n';
  out << "# max_ratio " << format_real_csv(report.max_ratio) << " at n=" << report.argmax << '\n';
  out << "# violations " << report.violations.size() << '\n';
  out << "n,ratio,bound\n";
  for (const auto& v : report.violations) {
    out << v.n << ',' << format_real_csv(v.ratio) << ',' << (v.upper ? "upper" : "lower") << '\n';
  }
}

void write_residual_json(std::ostream& out, double a, double b, const ResidualReport& r) {
  out << "{\"a\":" << format_real_json(a) << ",\"b\":" << format_real_json(b)
      << ",\"evaluated\":" << r.evaluated << ",\"max_abs\":" << format_real_json(r.max_abs)
      << ",\"mean_abs\":" << format_real_json(r.mean_abs)
      << ",\"max_norm\":" << format_real_json(r.max_norm)
      << ",\"mean_norm\":" << format_real_json(r.mean_norm) << "}\n";
}

}  // namespace goldbach
