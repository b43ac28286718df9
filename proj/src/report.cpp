#include "softjig/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace softjig {

namespace {

const char* kSvgFont = "font-family=\"sans-serif\"";

std::string svg_open(int width, int height) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
  s += std::to_string(width);
  s += "\" height=\"";
  s += std::to_string(height);
  s += "\" viewBox=\"0 0 ";
  s += std::to_string(width);
  s += " ";
  s += std::to_string(height);
  s += "\">\n";
  return s;
}

std::string esc_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_fixed(double v, int digits) {
  if (v == 0.0) v = 0.0;  // collapse negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sweep_csv(const std::vector<SweepRecord>& rows) {
  std::string out = "scenario,fixture,deviation_deg,success,failure_mode,peak_force_N\n";
  for (const SweepRecord& r : rows) {
    out += r.scenario;
    out += ',';
    out += r.fixture;
    out += ',';
    out += std::to_string(r.deviation_deg);
    out += ',';
    out += r.success ? '1' : '0';
    out += ',';
    out += to_string(r.failure_mode);
    out += ',';
    out += format_fixed(r.peak_force_n, 3);
    out += '\n';
  }
  return out;
}

std::string success_matrix_svg(const std::vector<SweepRecord>& rows) {
  std::vector<std::string> scenarios;
  for (const SweepRecord& r : rows) {
    if (std::find(scenarios.begin(), scenarios.end(), r.scenario) == scenarios.end()) {
      scenarios.push_back(r.scenario);
    }
  }
  static const char* fixture_order[] = {"vise", "jamming", "shell"};
  std::vector<std::string> fixtures;
  for (const char* f : fixture_order) {
    for (const SweepRecord& r : rows) {
      if (r.fixture == f) {
        fixtures.push_back(f);
        break;
      }
    }
  }
  std::vector<int> deviations;
  for (const SweepRecord& r : rows) {
    if (std::find(deviations.begin(), deviations.end(), r.deviation_deg) == deviations.end()) {
      deviations.push_back(r.deviation_deg);
    }
  }
  std::sort(deviations.begin(), deviations.end());

  const int cell_w = 26, cell_h = 22;
  const int left = 130, top = 54, gap = 10, margin = 10;
  const int ndev = static_cast<int>(deviations.size());
  const int group_w = ndev * cell_w;
  const int width = left + static_cast<int>(fixtures.size()) * (group_w + gap) - gap + margin;
  const int height = top + static_cast<int>(scenarios.size()) * cell_h + margin;

  std::string svg = svg_open(width, height);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const int x0 = left + static_cast<int>(f) * (group_w + gap);
    svg += "<text x=\"" + std::to_string(x0 + group_w / 2) + "\" y=\"18\" " + kSvgFont +
           " font-size=\"13\" text-anchor=\"middle\">" + esc_xml(fixtures[f]) + "</text>\n";
    for (int d = 0; d < ndev; ++d) {
      svg += "<text x=\"" + std::to_string(x0 + d * cell_w + cell_w / 2) + "\" y=\"40\" " +
             kSvgFont + " font-size=\"10\" text-anchor=\"middle\">" +
             std::to_string(deviations[d]) + "</text>\n";
    }
  }
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    const int y0 = top + static_cast<int>(s) * cell_h;
    svg += "<text x=\"" + std::to_string(left - 6) + "\" y=\"" + std::to_string(y0 + 15) + "\" " +
           kSvgFont + " font-size=\"11\" text-anchor=\"end\">" + esc_xml(scenarios[s]) +
           "</text>\n";
  }
  for (const SweepRecord& r : rows) {
    const auto si = std::find(scenarios.begin(), scenarios.end(), r.scenario) - scenarios.begin();
    const auto fi = std::find(fixtures.begin(), fixtures.end(), r.fixture) - fixtures.begin();
    const auto di = std::find(deviations.begin(), deviations.end(), r.deviation_deg) -
                    deviations.begin();
    const int x = left + static_cast<int>(fi) * (group_w + gap) + static_cast<int>(di) * cell_w;
    const int y = top + static_cast<int>(si) * cell_h;
    svg += "<rect x=\"" + std::to_string(x + 1) + "\" y=\"" + std::to_string(y + 1) + "\" width=\"" +
           std::to_string(cell_w - 2) + "\" height=\"" + std::to_string(cell_h - 2) +
           "\" fill=\"" + (r.success ? "#2e7d32" : "#c62828") + "\"><title>" +
           esc_xml(r.scenario) + " / " + esc_xml(r.fixture) + " / " +
           std::to_string(r.deviation_deg) + " deg: " + to_string(r.failure_mode) +
           "</title></rect>\n";
  }
  svg += "</svg>\n";
  return svg;
}

TraceStats trace_stats(const std::vector<std::vector<TraceSample>>& replicates) {
  if (replicates.empty()) throw std::invalid_argument("trace stats need at least one replicate");
  const std::size_t n = replicates.front().size();
  for (const auto& r : replicates) {
    if (r.size() != n) throw std::invalid_argument("trace replicates must have equal length");
  }
  TraceStats t;
  t.displacement_mm.resize(n);
  t.mean_n.resize(n);
  t.std_n.resize(n);
  const double k = static_cast<double>(replicates.size());
  for (std::size_t i = 0; i < n; ++i) {
    t.displacement_mm[i] = replicates.front()[i].displacement_mm;
    double mean = 0.0;
    for (const auto& r : replicates) mean += r[i].force_n;
    mean /= k;
    double var = 0.0;
    for (const auto& r : replicates) {
      const double d = r[i].force_n - mean;
      var += d * d;
    }
    t.mean_n[i] = mean;
    t.std_n[i] = std::sqrt(var / k);
  }
  return t;
}

std::string trace_csv(const TraceStats& t) {
  std::string out = "displacement_mm,mean_force_n,std_force_n\n";
  for (std::size_t i = 0; i < t.displacement_mm.size(); ++i) {
    out += format_fixed(t.displacement_mm[i], 4);
    out += ',';
    out += format_fixed(t.mean_n[i], 4);
    out += ',';
    out += format_fixed(t.std_n[i], 4);
    out += '\n';
  }
  return out;
}

std::string trace_svg(const TraceStats& t, const std::string& title) {
  const int width = 640, height = 400;
  const double lx = 60, rx = 620, ty = 40, by = 360;
  double x_max = 1e-9, y_max = 1e-9;
  for (std::size_t i = 0; i < t.displacement_mm.size(); ++i) {
    x_max = std::max(x_max, t.displacement_mm[i]);
    y_max = std::max(y_max, t.mean_n[i] + t.std_n[i]);
  }
  y_max *= 1.1;
  if (y_max < 1.0) y_max = 1.0;
  auto px = [&](double x) { return lx + (rx - lx) * x / x_max; };
  auto py = [&](double y) { return by - (by - ty) * y / y_max; };

  std::string svg = svg_open(width, height);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"22\" " + std::string(kSvgFont) +
         " font-size=\"14\" text-anchor=\"middle\">" + esc_xml(title) + "</text>\n";
  for (int g = 0; g <= 4; ++g) {
    const double gx = lx + (rx - lx) * g / 4.0;
    const double gy = by - (by - ty) * g / 4.0;
    svg += "<line x1=\"" + format_fixed(gx, 1) + "\" y1=\"" + format_fixed(ty, 1) + "\" x2=\"" +
           format_fixed(gx, 1) + "\" y2=\"" + format_fixed(by, 1) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + format_fixed(lx, 1) + "\" y1=\"" + format_fixed(gy, 1) + "\" x2=\"" +
           format_fixed(rx, 1) + "\" y2=\"" + format_fixed(gy, 1) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + format_fixed(gx, 1) + "\" y=\"378\" " + kSvgFont +
           " font-size=\"10\" text-anchor=\"middle\">" + format_fixed(x_max * g / 4.0, 1) +
           "</text>\n";
    svg += "<text x=\"" + format_fixed(lx - 6, 1) + "\" y=\"" + format_fixed(gy + 3, 1) + "\" " +
           kSvgFont + " font-size=\"10\" text-anchor=\"end\">" + format_fixed(y_max * g / 4.0, 1) +
           "</text>\n";
  }
  svg += "<text x=\"320\" y=\"396\" " + std::string(kSvgFont) +
         " font-size=\"11\" text-anchor=\"middle\">displacement [mm]</text>\n";
  svg += "<text x=\"14\" y=\"200\" " + std::string(kSvgFont) +
         " font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 14 200)\">force "
         "[N]</text>\n";

  bool any_std = false;
  for (double s : t.std_n) any_std = any_std || s > 0.0;
  if (any_std) {
    std::string band = "<polygon fill=\"#bbdefb\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < t.displacement_mm.size(); ++i) {
      band += format_fixed(px(t.displacement_mm[i]), 1) + "," +
              format_fixed(py(t.mean_n[i] + t.std_n[i]), 1) + " ";
    }
    for (std::size_t i = t.displacement_mm.size(); i-- > 0;) {
      band += format_fixed(px(t.displacement_mm[i]), 1) + "," +
              format_fixed(py(std::max(0.0, t.mean_n[i] - t.std_n[i])), 1) + " ";
    }
    band += "\"/>\n";
    svg += band;
  }
  std::string line = "<polyline fill=\"none\" stroke=\"#1565c0\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < t.displacement_mm.size(); ++i) {
    line += format_fixed(px(t.displacement_mm[i]), 1) + "," + format_fixed(py(t.mean_n[i]), 1) +
            " ";
  }
  line += "\"/>\n";
  svg += line;
  svg += "<line x1=\"" + format_fixed(lx, 1) + "\" y1=\"" + format_fixed(by, 1) + "\" x2=\"" +
         format_fixed(rx, 1) + "\" y2=\"" + format_fixed(by, 1) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + format_fixed(lx, 1) + "\" y1=\"" + format_fixed(ty, 1) + "\" x2=\"" +
         format_fixed(lx, 1) + "\" y2=\"" + format_fixed(by, 1) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "</svg>\n";
  return svg;
}

std::string free_space_csv(const FreeSpaceGrid& fs) {
  const ConfigGrid& g = fs.grid;
  std::string out = "i,j,k,free\n";
  out.reserve(out.size() + g.total() * 12);
  for (int k = 0; k < g.ntheta; ++k) {
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        out += std::to_string(i);
        out += ',';
        out += std::to_string(j);
        out += ',';
        out += std::to_string(k);
        out += ',';
        out += fs.free[g.flat_index(i, j, k)] ? '1' : '0';
        out += '\n';
      }
    }
  }
  return out;
}

std::string free_space_slice_svg(const FreeSpaceGrid& fs, int k, double workspace_bound_mm) {
  const ConfigGrid& g = fs.grid;
  if (k < 0 || k >= g.ntheta) throw std::invalid_argument("slice index out of range");
  const int size = 600;
  const double half = std::max({workspace_bound_mm, std::abs(g.x_min), std::abs(g.x_max),
                                std::abs(g.y_min), std::abs(g.y_max)}) *
                      1.05;
  auto px = [&](double x) { return (x + half) / (2.0 * half) * size; };
  auto py = [&](double y) { return (half - y) / (2.0 * half) * size; };

  std::string svg = svg_open(size, size + 30);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#263238\"/>\n";
  svg += "<text x=\"10\" y=\"" + std::to_string(size + 20) + "\" " + kSvgFont +
         " font-size=\"12\" fill=\"white\">theta slice k=" + std::to_string(k) +
         " (theta=" + format_fixed(g.theta_at(k) * 180.0 / kPi, 1) +
         " deg), free cells in green</text>\n";

  const double cw = g.dx() / (2.0 * half) * size;
  const double ch = g.dy() / (2.0 * half) * size;
  for (int j = 0; j < g.ny; ++j) {
    int run_start = -1;
    for (int i = 0; i <= g.nx; ++i) {
      const bool cell_free = i < g.nx && fs.free[g.flat_index(i, j, k)];
      if (cell_free && run_start < 0) run_start = i;
      if (!cell_free && run_start >= 0) {
        const double x0 = px(g.x_at(run_start) - g.dx() / 2.0);
        const double y0 = py(g.y_at(j) + g.dy() / 2.0);
        svg += "<rect x=\"" + format_fixed(x0, 2) + "\" y=\"" + format_fixed(y0, 2) +
               "\" width=\"" + format_fixed(cw * (i - run_start), 2) + "\" height=\"" +
               format_fixed(ch, 2) + "\" fill=\"#66bb6a\"/>\n";
        run_start = -1;
      }
    }
  }
  svg += "<circle cx=\"" + format_fixed(px(0.0), 2) + "\" cy=\"" + format_fixed(py(0.0), 2) +
         "\" r=\"" + format_fixed(workspace_bound_mm / (2.0 * half) * size, 2) +
         "\" fill=\"none\" stroke=\"#eceff1\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
  svg += "</svg>\n";
  return svg;
}

nlohmann::ordered_json caging_report_json(const CagingReport& report, const FreeSpaceGrid& rigid,
                                          const FreeSpaceGrid& soft,
                                          const std::string& object_name, double inflation_u) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["object"] = object_name;
  doc["inflation_u"] = inflation_u;
  const ConfigGrid& g = rigid.grid;
  doc["grid"] = {{"nx", g.nx},           {"ny", g.ny},           {"ntheta", g.ntheta},
                 {"x_min_mm", g.x_min},  {"x_max_mm", g.x_max},  {"y_min_mm", g.y_min},
                 {"y_max_mm", g.y_max},  {"theta_min_rad", g.theta_min},
                 {"theta_max_rad", g.theta_max}};
  doc["conditions"] = {{"cond1_rigid_free_nonempty", report.cond1_rigid_free_nonempty},
                       {"cond2_start_pose_free", report.cond2_pose_in_free},
                       {"cond3_soft_free_empty", report.cond3_soft_free_empty},
                       {"all_hold", report.all_hold()}};
  doc["free_cells_rigid"] = report.free_cell_count_rigid;
  doc["free_cells_soft"] = report.free_cell_count_soft;
  doc["free_fraction_rigid"] =
      static_cast<double>(rigid.free_count()) / static_cast<double>(g.total());
  doc["free_fraction_soft"] =
      static_cast<double>(soft.free_count()) / static_cast<double>(g.total());
  if (report.witness_escape_pose) {
    doc["witness_escape_pose"] = {{"x_mm", report.witness_escape_pose->x},
                                  {"y_mm", report.witness_escape_pose->y},
                                  {"theta_rad", report.witness_escape_pose->theta}};
  }
  return doc;
}

std::string design_csv(const std::vector<RankedDesign>& designs) {
  std::string out = "rank,n_modules,arc_span_deg,max_protrusion_mm,closure_margin\n";
  for (std::size_t r = 0; r < designs.size(); ++r) {
    const RankedDesign& d = designs[r];
    out += std::to_string(r + 1);
    out += ',';
    out += std::to_string(d.jig.n_modules);
    out += ',';
    out += format_fixed(d.jig.chamber.arc_span_rad * 180.0 / kPi, 2);
    out += ',';
    out += format_fixed(d.jig.chamber.max_protrusion_mm, 2);
    out += ',';
    out += format_fixed(d.closure_margin, 4);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw std::runtime_error("cannot create directory " + path + ": " + ec.message());
}

}  // namespace softjig
