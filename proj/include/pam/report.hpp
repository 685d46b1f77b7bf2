// Copyright 2026 The PAM Planner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Report emission: timeline CSV, JSON summaries and self-contained SVG
// charts.

#ifndef PAM_REPORT_HPP
#define PAM_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <iterator>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pam/perf_model.hpp"
#include "pam/planner.hpp"
#include "pam/resource_model.hpp"
#include "pam/scenario_io.hpp"
#include "pam/simulation.hpp"

namespace pam {

inline constexpr std::string_view kTimelineHeader =
    "t,theta_cur_gbps,policy,smartnic_util,cpu_util,crossings,latency_us,"
    "max_throughput_gbps,migrations_this_step,cumulative_migrations,outcome";

// ---------------------------------------------------------------------------
// Timeline CSV

inline std::string timeline_csv(std::span<const TimelineRecord> records) {
  std::string out(kTimelineHeader);
  out += '\n';
  for (const auto& r : records) {
    std::string migrations;
    for (const auto& id : r.migrations_this_step) {
      if (!migrations.empty()) migrations += ';';
      migrations += id;
    }
    out += format_number(r.t) + ',' + format_number(r.theta_cur) + ',' + r.policy + ',' +
           format_number(r.smartnic_util) + ',' + format_number(r.cpu_util) + ',' +
           std::to_string(r.crossings) + ',' + format_number(r.latency_us) + ',' +
           format_number(r.max_throughput_gbps) + ',' + migrations + ',' +
           std::to_string(r.cumulative_migrations) + ',' + r.outcome + '\n';
  }
  return out;
}

inline void emit_timeline_csv(std::span<const TimelineRecord> records,
                              const std::filesystem::path& path) {
  write_text_file(path, timeline_csv(records));
}

/// Inverse of timeline_csv. Throws ScenarioError(Parse).
inline std::vector<TimelineRecord> parse_timeline_csv(std::string_view text) {
  std::vector<TimelineRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kTimelineHeader)
    detail::parse_fail("timeline csv: bad header");
  std::size_t line_no = 1;
  auto number = [&line_no](std::string_view cell) {
    auto v = parse_number(cell);
    if (!v) detail::parse_fail("timeline csv:" + std::to_string(line_no) + ": bad number");
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cells.size() != 11)
      detail::parse_fail("timeline csv:" + std::to_string(line_no) + ": expected 11 columns");
    TimelineRecord r;
    r.t = number(cells[0]);
    r.theta_cur = number(cells[1]);
    r.policy = cells[2];
    r.smartnic_util = number(cells[3]);
    r.cpu_util = number(cells[4]);
    r.crossings = static_cast<std::size_t>(number(cells[5]));
    r.latency_us = number(cells[6]);
    r.max_throughput_gbps = number(cells[7]);
    std::size_t s = 0;
    while (!cells[8].empty()) {
      const auto semi = cells[8].find(';', s);
      r.migrations_this_step.push_back(cells[8].substr(s, semi - s));
      if (semi == std::string::npos) break;
      s = semi + 1;
    }
    r.cumulative_migrations = static_cast<std::size_t>(number(cells[9]));
    r.outcome = cells[10];
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const ServiceChain& chain) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : chain.vnfs)
    arr.push_back({{"id", v.id}, {"spec", v.spec}, {"placement", to_string(v.placement)}});
  return arr;
}

inline ordered_json to_json(const PerfEstimate& p) {
  return {{"crossings", p.crossings},
          {"latency_us", p.latency_us},
          {"max_throughput_gbps", p.max_throughput_gbps}};
}

inline ordered_json to_json(const VerificationReport& v) {
  ordered_json failures = ordered_json::array();
  for (const auto& f : v.failures)
    failures.push_back(
        {{"check", to_string(f.check)}, {"message", f.message}, {"witness", f.witness}});
  ordered_json j{{"passed", v.passed()}, {"checks_run", v.checks_run}, {"failures", failures}};
  if (v.input_closure_witness) j["info_input_closure_witness"] = *v.input_closure_witness;
  if (v.global_offload_witness) j["info_global_offload_witness"] = *v.global_offload_witness;
  return j;
}

inline ordered_json to_json(const MigrationPlan& plan) {
  ordered_json steps = ordered_json::array();
  for (const auto& s : plan.steps)
    steps.push_back({{"vnf_id", s.vnf_id},
                     {"from", to_string(s.from)},
                     {"to", to_string(s.to)},
                     {"reason", "min_smartnic_capacity"},
                     {"border", to_string(s.side)}});
  ordered_json rejected = ordered_json::array();
  for (const auto& r : plan.rejected_candidates)
    rejected.push_back({{"vnf_id", r.vnf_id}, {"reason", r.reason}});
  return {{"policy", to_string(plan.policy)},
          {"outcome", to_string(plan.outcome)},
          {"steps", steps},
          {"rejected_candidates", rejected},
          {"post_chain", to_json(plan.post_chain)}};
}

/// Plan plus the before/after state it implies for the scenario.
inline ordered_json plan_report_json(const Scenario& sc, const MigrationPlan& plan) {
  ordered_json j = to_json(plan);
  const LoadState load = sc.load;
  auto state = [&](const ServiceChain& c) {
    ordered_json s = to_json(estimate_perf(c, sc.specs, sc.pcie_latency_us));
    s["smartnic_util"] = device_utilization(c, sc.specs, Placement::SmartNic, load);
    s["cpu_util"] = device_utilization(c, sc.specs, Placement::Cpu, load);
    return s;
  };
  j["theta_cur_gbps"] = load.theta_cur;
  j["pcie_latency_us"] = sc.pcie_latency_us;
  j["before"] = state(sc.chain);
  j["after"] = state(plan.post_chain);
  return j;
}

inline ordered_json to_json(const ComparisonReport& rep) {
  auto policy = [](const PolicyResult& r) {
    ordered_json j = to_json(r.plan);
    j["before"] = to_json(r.before);
    j["after"] = to_json(r.after);
    j["crossings_delta"] =
        static_cast<long long>(r.after.crossings) - static_cast<long long>(r.before.crossings);
    if (r.verification) j["verification"] = to_json(*r.verification);
    return j;
  };
  return {{"theta_cur_gbps", rep.load.theta_cur},
          {"pcie_latency_us", rep.pcie_latency_us},
          {"pam", policy(rep.pam)},
          {"naive", policy(rep.naive)},
          {"latency_reduction_pct", rep.latency_reduction_pct}};
}

// ---------------------------------------------------------------------------
// Plain-text summaries for the CLI

// Six significant digits; for human-readable summaries only.
inline std::string pretty_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string plan_text(const Scenario& sc, const MigrationPlan& plan) {
  std::ostringstream os;
  const auto before = estimate_perf(sc.chain, sc.specs, sc.pcie_latency_us);
  const auto after = estimate_perf(plan.post_chain, sc.specs, sc.pcie_latency_us);
  os << "policy: " << to_string(plan.policy) << "\n"
     << "theta_cur: " << pretty_number(sc.load.theta_cur) << " Gbps\n"
     << "outcome: " << to_string(plan.outcome) << "\n";
  if (plan.steps.empty()) os << "steps: none\n";
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& s = plan.steps[i];
    os << "step " << i + 1 << ": " << s.vnf_id << " " << to_string(s.from) << " -> "
       << to_string(s.to) << " (border: " << to_string(s.side) << ")\n";
  }
  for (const auto& r : plan.rejected_candidates)
    os << "rejected: " << r.vnf_id << " (" << r.reason << ")\n";
  os << "smartnic_util: "
     << pretty_number(device_utilization(sc.chain, sc.specs, Placement::SmartNic, sc.load))
     << " -> "
     << pretty_number(device_utilization(plan.post_chain, sc.specs, Placement::SmartNic, sc.load))
     << "\n"
     << "cpu_util: "
     << pretty_number(device_utilization(sc.chain, sc.specs, Placement::Cpu, sc.load)) << " -> "
     << pretty_number(device_utilization(plan.post_chain, sc.specs, Placement::Cpu, sc.load))
     << "\n"
     << "crossings: " << before.crossings << " -> " << after.crossings << "\n"
     << "latency_us: " << pretty_number(before.latency_us) << " -> "
     << pretty_number(after.latency_us) << "\n"
     << "max_throughput_gbps: " << pretty_number(before.max_throughput_gbps) << " -> "
     << pretty_number(after.max_throughput_gbps) << "\n";
  return os.str();
}

inline std::string comparison_text(const ComparisonReport& rep) {
  std::ostringstream os;
  os << "theta_cur: " << pretty_number(rep.load.theta_cur)
     << " Gbps, pcie_latency_us: " << pretty_number(rep.pcie_latency_us) << "\n";
  for (const PolicyResult* r : {&rep.naive, &rep.pam}) {
    os << to_string(r->plan.policy) << ": " << to_string(r->plan.outcome) << ", steps [";
    for (std::size_t i = 0; i < r->plan.steps.size(); ++i)
      os << (i ? ", " : "") << r->plan.steps[i].vnf_id;
    const long long dc =
        static_cast<long long>(r->after.crossings) - static_cast<long long>(r->before.crossings);
    os << "]\n  crossings " << r->before.crossings << " -> " << r->after.crossings << " ("
       << (dc >= 0 ? "+" : "") << dc << ")\n  latency_us " << pretty_number(r->before.latency_us)
       << " -> " << pretty_number(r->after.latency_us) << "\n  max_throughput_gbps "
       << pretty_number(r->before.max_throughput_gbps) << " -> "
       << pretty_number(r->after.max_throughput_gbps) << "\n";
    if (r->verification)
      os << "  verification: " << (r->verification->passed() ? "pass" : "FAIL") << "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", rep.latency_reduction_pct);
  os << "pam latency reduction vs naive: " << buf << "%\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string svg_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

struct Panel {
  double x, y, w, h;
};

inline double nice_max(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (v <= m * mag) return m * mag;
  return 10.0 * mag;
}

inline void axes(std::ostringstream& os, const Panel& p, std::string_view title,
                 std::string_view ylabel, double ymax) {
  os << "<text x=\"" << fmt2(p.x + p.w / 2) << "\" y=\"" << fmt2(p.y - 12)
     << "\" text-anchor=\"middle\" font-size=\"14\">" << svg_escape(title) << "</text>\n";
  os << "<line x1=\"" << fmt2(p.x) << "\" y1=\"" << fmt2(p.y + p.h) << "\" x2=\""
     << fmt2(p.x + p.w) << "\" y2=\"" << fmt2(p.y + p.h) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fmt2(p.x) << "\" y1=\"" << fmt2(p.y) << "\" x2=\"" << fmt2(p.x)
     << "\" y2=\"" << fmt2(p.y + p.h) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = ymax * i / 4.0;
    const double yy = p.y + p.h - p.h * i / 4.0;
    os << "<text x=\"" << fmt2(p.x - 6) << "\" y=\"" << fmt2(yy + 4)
       << "\" text-anchor=\"end\" font-size=\"10\">" << fmt2(v) << "</text>\n";
  }
  os << "<text x=\"" << fmt2(p.x - 44) << "\" y=\"" << fmt2(p.y + p.h / 2)
     << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 " << fmt2(p.x - 44)
     << ' ' << fmt2(p.y + p.h / 2) << ")\">" << svg_escape(ylabel) << "</text>\n";
}

using Bars = std::vector<std::pair<std::string, double>>;

inline void bar_panel(std::ostringstream& os, const Panel& p, std::string_view title,
                      std::string_view ylabel, const Bars& bars) {
  double top = 0.0;
  for (const auto& [_, v] : bars) top = std::max(top, v);
  const double ymax = nice_max(top);
  axes(os, p, title, ylabel, ymax);
  const double slot = p.w / static_cast<double>(std::max<std::size_t>(bars.size(), 1));
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double h = p.h * std::clamp(bars[i].second / ymax, 0.0, 1.0);
    const double x = p.x + slot * i + slot * 0.2;
    os << "<rect x=\"" << fmt2(x) << "\" y=\"" << fmt2(p.y + p.h - h) << "\" width=\""
       << fmt2(slot * 0.6) << "\" height=\"" << fmt2(h) << "\" fill=\""
       << kPalette[i % std::size(kPalette)] << "\"/>\n";
    os << "<text x=\"" << fmt2(x + slot * 0.3) << "\" y=\"" << fmt2(p.y + p.h - h - 4)
       << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt2(bars[i].second) << "</text>\n";
    os << "<text x=\"" << fmt2(x + slot * 0.3) << "\" y=\"" << fmt2(p.y + p.h + 16)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << svg_escape(bars[i].first)
       << "</text>\n";
  }
}

using Series = std::map<std::string, std::vector<std::pair<double, double>>>;

inline void line_panel(std::ostringstream& os, const Panel& p, std::string_view title,
                       std::string_view ylabel, const Series& series) {
  double xmin = 0.0, xmax = 0.0, top = 0.0;
  bool first = true;
  for (const auto& [_, pts] : series)
    for (const auto& [x, y] : pts) {
      xmin = first ? x : std::min(xmin, x);
      xmax = first ? x : std::max(xmax, x);
      if (std::isfinite(y)) top = std::max(top, y);
      first = false;
    }
  const double ymax = nice_max(top);
  const double span = xmax > xmin ? xmax - xmin : 1.0;
  axes(os, p, title, ylabel, ymax);
  os << "<text x=\"" << fmt2(p.x + p.w / 2) << "\" y=\"" << fmt2(p.y + p.h + 30)
     << "\" text-anchor=\"middle\" font-size=\"11\">t (s)</text>\n";
  std::size_t k = 0;
  for (const auto& [name, pts] : series) {
    const char* color = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) {
      const double px = p.x + p.w * (x - xmin) / span;
      const double py = p.y + p.h - p.h * std::clamp(y / ymax, 0.0, 1.0);
      os << fmt2(px) << ',' << fmt2(py) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << fmt2(p.x + p.w - 4) << "\" y=\"" << fmt2(p.y + 14 + 14.0 * k)
       << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">"
       << svg_escape(name) << "</text>\n";
    ++k;
  }
}

inline std::string svg_document(double w, double h, const std::string& body) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(w) + "\" height=\"" +
         fmt2(h) + "\" viewBox=\"0 0 " + fmt2(w) + ' ' + fmt2(h) +
         "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         body + "</svg>\n";
}

}  // namespace detail

/// Two bar panels: (a) latency and (b) max throughput, each showing the
/// pre-migration chain, the naive result and the PAM result.
inline std::string comparison_svg(const ComparisonReport& rep) {
  std::ostringstream os;
  detail::bar_panel(os, {70, 40, 300, 220}, "(a) Latency", "latency (us)",
                    {{"before", rep.pam.before.latency_us},
                     {"naive", rep.naive.after.latency_us},
                     {"PAM", rep.pam.after.latency_us}});
  detail::bar_panel(os, {480, 40, 300, 220}, "(b) Throughput", "max throughput (Gbps)",
                    {{"before", rep.pam.before.max_throughput_gbps},
                     {"naive", rep.naive.after.max_throughput_gbps},
                     {"PAM", rep.pam.after.max_throughput_gbps}});
  return detail::svg_document(820, 310, os.str());
}

/// Two line panels over trace time, one series per policy present.
inline std::string timeline_svg(std::span<const TimelineRecord> records) {
  detail::Series latency, throughput;
  for (const auto& r : records) {
    latency[r.policy].emplace_back(r.t, r.latency_us);
    throughput[r.policy].emplace_back(r.t, r.max_throughput_gbps);
  }
  std::ostringstream os;
  detail::line_panel(os, {70, 40, 300, 220}, "(a) Latency", "latency (us)", latency);
  detail::line_panel(os, {480, 40, 300, 220}, "(b) Throughput", "max throughput (Gbps)",
                     throughput);
  return detail::svg_document(820, 320, os.str());
}

inline void emit_svg(const std::string& svg, const std::filesystem::path& path) {
  write_text_file(path, svg);
}

}  // namespace pam

#endif  // PAM_REPORT_HPP
