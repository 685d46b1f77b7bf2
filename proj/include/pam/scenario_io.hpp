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


// Scenario and trace file formats.
//
// Scenario (JSON, strict: unknown keys are rejected at every level):
//
//   {
//     "chain": [{"id": "lb", "spec": "LoadBalancer", "placement": "CPU"}, ...],
//     "anchors": {"ingress": "SmartNIC", "egress": "SmartNIC"},
//     "spec_overrides": {"Monitor": {"cap_smartnic": 1.8}, ...},
//     "theta_cur": 1.0,
//     "pcie_latency_us": 10
//   }
//
// Only "chain" is required. Overrides patch the built-in capacity table
// field by field; a name outside the table is a new spec and must give both
// capacities. Trace files are CSV with the header "t,theta_cur_gbps".

#ifndef PAM_SCENARIO_IO_HPP
#define PAM_SCENARIO_IO_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "pam/chain_model.hpp"

namespace pam {

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation, Io };

  ScenarioError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// ---------------------------------------------------------------------------
// Number formatting shared by every text output. Shortest representation
// that parses back to the same double.

inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

inline std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(ScenarioError::Kind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ScenarioError(ScenarioError::Kind::Io, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out)
    throw ScenarioError(ScenarioError::Kind::Io, "write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Scenario files

namespace detail {

using json = nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& msg) {
  throw ScenarioError(ScenarioError::Kind::Parse, msg);
}

inline void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                                const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      parse_fail("unknown field '" + key + "' in " + where);
  }
}

inline const json& require_object(const json& j, const std::string& where) {
  if (!j.is_object()) parse_fail(where + ": expected an object");
  return j;
}

inline double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where + ": expected a number");
  return j.get<double>();
}

inline std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where + ": expected a string");
  return j.get<std::string>();
}

inline Placement get_placement(const json& j, const std::string& where) {
  try {
    return placement_from_string(get_string(j, where));
  } catch (const std::invalid_argument& e) {
    parse_fail(where + ": " + e.what());
  }
}

inline std::size_t line_of_offset(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + end, '\n'));
}

// Ids end up in CSV cells and ';'-joined lists.
inline void check_id_chars(const std::string& id, const std::string& where) {
  if (id.empty()) parse_fail(where + ": id must not be empty");
  if (id.find_first_of(",;\"\n\r") != std::string::npos)
    parse_fail(where + ": id '" + id + "' contains one of , ; \" or a newline");
}

}  // namespace detail

/// Parses scenario JSON text, then validates it. `source` names the input
/// in error messages. Throws ScenarioError (Parse or Validation).
inline Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>") {
  using detail::json;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    detail::parse_fail(source + ":" + std::to_string(detail::line_of_offset(text, e.byte)) +
                       ": " + e.what());
  }
  detail::require_object(root, source);
  detail::reject_unknown_keys(root, {"chain", "anchors", "spec_overrides", "theta_cur",
                                     "pcie_latency_us"},
                              source);

  Scenario sc;
  sc.specs = builtin_table1();

  if (!root.contains("chain")) detail::parse_fail(source + ": missing required key 'chain'");
  const json& chain = root.at("chain");
  if (!chain.is_array()) detail::parse_fail(source + ": 'chain' must be an array");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const std::string where = "chain[" + std::to_string(i) + "]";
    const json& e = detail::require_object(chain[i], where);
    detail::reject_unknown_keys(e, {"id", "spec", "placement"}, where);
    for (const char* k : {"id", "spec", "placement"})
      if (!e.contains(k)) detail::parse_fail(where + ": missing required key '" + k + "'");
    VnfInstance v;
    v.id = detail::get_string(e.at("id"), where + ".id");
    detail::check_id_chars(v.id, where + ".id");
    v.spec = detail::get_string(e.at("spec"), where + ".spec");
    v.placement = detail::get_placement(e.at("placement"), where + ".placement");
    sc.chain.vnfs.push_back(std::move(v));
  }

  if (root.contains("anchors")) {
    const json& a = detail::require_object(root.at("anchors"), "anchors");
    detail::reject_unknown_keys(a, {"ingress", "egress"}, "anchors");
    if (a.contains("ingress"))
      sc.chain.ingress_anchor = detail::get_placement(a.at("ingress"), "anchors.ingress");
    if (a.contains("egress"))
      sc.chain.egress_anchor = detail::get_placement(a.at("egress"), "anchors.egress");
  }

  if (root.contains("spec_overrides")) {
    const json& ov = detail::require_object(root.at("spec_overrides"), "spec_overrides");
    for (const auto& [name, body] : ov.items()) {
      const std::string where = "spec_overrides." + name;
      detail::require_object(body, where);
      detail::reject_unknown_keys(
          body, {"cap_smartnic", "cap_cpu", "proc_latency_smartnic", "proc_latency_cpu"}, where);
      auto it = sc.specs.find(name);
      if (it == sc.specs.end()) {
        for (const char* k : {"cap_smartnic", "cap_cpu"})
          if (!body.contains(k))
            detail::parse_fail(where + ": new spec '" + name + "' must set '" + k + "'");
        it = sc.specs.emplace(name, VnfSpec{name, 0.0, 0.0, 0.0, 0.0}).first;
      }
      VnfSpec& s = it->second;
      if (body.contains("cap_smartnic"))
        s.cap_smartnic = detail::get_number(body.at("cap_smartnic"), where + ".cap_smartnic");
      if (body.contains("cap_cpu"))
        s.cap_cpu = detail::get_number(body.at("cap_cpu"), where + ".cap_cpu");
      if (body.contains("proc_latency_smartnic"))
        s.proc_latency_smartnic = detail::get_number(body.at("proc_latency_smartnic"),
                                                     where + ".proc_latency_smartnic");
      if (body.contains("proc_latency_cpu"))
        s.proc_latency_cpu =
            detail::get_number(body.at("proc_latency_cpu"), where + ".proc_latency_cpu");
    }
  }

  if (root.contains("theta_cur"))
    sc.load.theta_cur = detail::get_number(root.at("theta_cur"), "theta_cur");
  if (root.contains("pcie_latency_us"))
    sc.pcie_latency_us = detail::get_number(root.at("pcie_latency_us"), "pcie_latency_us");

  const ValidationReport rep = validate(sc);
  if (!rep.ok())
    throw ScenarioError(ScenarioError::Kind::Validation, source + ": " + rep.summary());
  return sc;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.string());
}

/// Serializes a scenario. Catalog entries equal to the built-in table are
/// omitted; every other entry is written in full, so parse_scenario of the
/// result reproduces the scenario exactly.
inline std::string dump_scenario(const Scenario& sc) {
  using json = nlohmann::ordered_json;
  json root;
  json chain = json::array();
  for (const auto& v : sc.chain.vnfs)
    chain.push_back({{"id", v.id}, {"spec", v.spec}, {"placement", to_string(v.placement)}});
  root["chain"] = std::move(chain);
  root["anchors"] = {{"ingress", to_string(sc.chain.ingress_anchor)},
                     {"egress", to_string(sc.chain.egress_anchor)}};
  const SpecCatalog builtin = builtin_table1();
  json ov = json::object();
  for (const auto& [name, s] : sc.specs) {
    auto it = builtin.find(name);
    if (it != builtin.end() && it->second == s) continue;
    ov[name] = {{"cap_smartnic", s.cap_smartnic},
                {"cap_cpu", s.cap_cpu},
                {"proc_latency_smartnic", s.proc_latency_smartnic},
                {"proc_latency_cpu", s.proc_latency_cpu}};
  }
  root["spec_overrides"] = std::move(ov);
  root["theta_cur"] = sc.load.theta_cur;
  root["pcie_latency_us"] = sc.pcie_latency_us;
  return root.dump(2) + "\n";
}

inline void save_scenario(const Scenario& sc, const std::filesystem::path& path) {
  write_text_file(path, dump_scenario(sc));
}

// ---------------------------------------------------------------------------
// Trace files

struct TracePoint {
  double t = 0.0;  // seconds
  double theta_cur = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

inline constexpr std::string_view kTraceHeader = "t,theta_cur_gbps";

/// Parses trace CSV. Requires the exact header, at least one row, strictly
/// increasing t and non-negative throughput. Blank lines are skipped.
inline std::vector<TracePoint> parse_trace(std::string_view text,
                                           const std::string& source = "<trace>") {
  std::vector<TracePoint> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (line != kTraceHeader)
        detail::parse_fail(where + ": expected header '" + std::string(kTraceHeader) + "'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      detail::parse_fail(where + ": expected two columns");
    const auto t = parse_number(std::string_view(line).substr(0, comma));
    const auto theta = parse_number(std::string_view(line).substr(comma + 1));
    if (!t) detail::parse_fail(where + ": bad number in column 't'");
    if (!theta) detail::parse_fail(where + ": bad number in column 'theta_cur_gbps'");
    if (!(*theta >= 0.0)) detail::parse_fail(where + ": theta_cur_gbps must be >= 0");
    if (!out.empty() && !(*t > out.back().t))
      detail::parse_fail(where + ": t must be strictly increasing");
    out.push_back({*t, *theta});
  }
  if (!header_seen) detail::parse_fail(source + ": empty trace file");
  if (out.empty()) detail::parse_fail(source + ": trace has no data rows");
  return out;
}

inline std::vector<TracePoint> load_trace(const std::filesystem::path& path) {
  return parse_trace(read_text_file(path), path.string());
}

}  // namespace pam

#endif  // PAM_SCENARIO_IO_HPP
