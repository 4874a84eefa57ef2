#pragma once

#include <iosfwd>
#include <string>

#include "goldbach/analysis.hpp"
#include "goldbach/estimators.hpp"
#include "goldbach/partition.hpp"

namespace goldbach {

// Fixed 12-significant-digit decimal, never scientific: keeps CSV diffs
// stable across runs and platforms.
std::string format_real_csv(double v);

// 15 significant digits for JSON payloads.
std::string format_real_json(double v);

// CSV schema: header "n,G", one row per even n, LF endings, no trailing
// separator.
void write_scan_csv(std::ostream& out, const PartitionSeries& series);
PartitionSeries read_scan_csv(std::istream& in);

// {"start":A,"end":B,"entries":[[n,g],...]}
void write_scan_json(std::ostream& out, const PartitionSeries& series);

// {"source_range":[A,B],"lower":[[n,g],...],"upper":[[n,g],...]}
void write_envelope_json(std::ostream& out, const Envelope& env);
Envelope read_envelope_json(std::istream& in);

void write_fit_json(std::ostream& out, const FitResult& fit);
FitResult read_fit_json(std::istream& in);

void write_breakdown_json(std::ostream& out, const EstimateBreakdown& b);
void write_breakdown_csv(std::ostream& out, const EstimateBreakdown& b);

// CSV: n,G,s0,s1,s2,margin,pass (pass is 1 or 0).
void write_strong_csv(std::ostream& out, const std::vector<StrongFormRow>& rows);

// '#'-prefixed extrema lines followed by a violations CSV (n,ratio,bound).
void write_chebyshev_report(std::ostream& out, const ChebyshevReport& report);

void write_residual_json(std::ostream& out, double a, double b, const ResidualReport& r);

}  // namespace goldbach
