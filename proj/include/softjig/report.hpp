#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "softjig/cspace.hpp"
#include "softjig/pullout.hpp"
#include "softjig/scenarios.hpp"

namespace softjig {

// All emitters build deterministic text: fixed-precision numbers, '.'
// decimal separator, '\n' line endings, no timestamps.

std::string format_fixed(double v, int digits);

struct SweepRecord {
  std::string scenario;
  std::string fixture;
  int deviation_deg = 0;
  bool success = false;
  FailureMode failure_mode = FailureMode::None;
  double peak_force_n = 0.0;
};

std::string sweep_csv(const std::vector<SweepRecord>& rows);
std::string success_matrix_svg(const std::vector<SweepRecord>& rows);

// Mean/std trace table. With a single replicate the std column is zero.
struct TraceStats {
  std::vector<double> displacement_mm;
  std::vector<double> mean_n;
  std::vector<double> std_n;
};

TraceStats trace_stats(const std::vector<std::vector<TraceSample>>& replicates);
std::string trace_csv(const TraceStats& t);
std::string trace_svg(const TraceStats& t, const std::string& title);

std::string free_space_csv(const FreeSpaceGrid& fs);
std::string free_space_slice_svg(const FreeSpaceGrid& fs, int k, double workspace_bound_mm);

nlohmann::ordered_json caging_report_json(const CagingReport& report, const FreeSpaceGrid& rigid,
                                          const FreeSpaceGrid& soft, const std::string& object_name,
                                          double inflation_u);

std::string design_csv(const std::vector<RankedDesign>& designs);

void write_text_file(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);

}  // namespace softjig
