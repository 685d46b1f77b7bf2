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

// Service chain data model: vNF capacity profiles, placed chains and
// scenarios, plus invariant validation.

#ifndef PAM_CHAIN_MODEL_HPP
#define PAM_CHAIN_MODEL_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pam {

enum class Placement { SmartNic, Cpu };

inline constexpr Placement other(Placement p) noexcept {
  return p == Placement::SmartNic ? Placement::Cpu : Placement::SmartNic;
}

inline constexpr std::string_view to_string(Placement p) noexcept {
  return p == Placement::SmartNic ? "SmartNIC" : "CPU";
}

/// Parses "SmartNIC" or "CPU" (case-sensitive). Throws std::invalid_argument.
inline Placement placement_from_string(std::string_view s) {
  if (s == "SmartNIC") return Placement::SmartNic;
  if (s == "CPU") return Placement::Cpu;
  throw std::invalid_argument("unknown placement '" + std::string(s) +
                              "' (expected SmartNIC or CPU)");
}

/// Per-device throughput capacity (Gbps) and per-packet processing latency
/// (microseconds) of one vNF type.
struct VnfSpec {
  std::string name;
  double cap_smartnic = 0.0;
  double cap_cpu = 0.0;
  double proc_latency_smartnic = 0.0;
  double proc_latency_cpu = 0.0;

  double capacity_on(Placement p) const noexcept {
    return p == Placement::SmartNic ? cap_smartnic : cap_cpu;
  }
  double latency_on(Placement p) const noexcept {
    return p == Placement::SmartNic ? proc_latency_smartnic : proc_latency_cpu;
  }

  friend bool operator==(const VnfSpec&, const VnfSpec&) = default;
};

using SpecCatalog = std::map<std::string, VnfSpec, std::less<>>;

struct VnfInstance {
  std::string id;
  std::string spec;  // key into a SpecCatalog
  Placement placement = Placement::SmartNic;

  friend bool operator==(const VnfInstance&, const VnfInstance&) = default;
};

/// vNFs in traffic order. Packets enter at the ingress anchor and leave at
/// the egress anchor; both sit on the NIC unless configured otherwise.
struct ServiceChain {
  std::vector<VnfInstance> vnfs;
  Placement ingress_anchor = Placement::SmartNic;
  Placement egress_anchor = Placement::SmartNic;

  std::size_t size() const noexcept { return vnfs.size(); }

  /// Index of the instance with the given id, or size() if absent.
  std::size_t index_of(std::string_view id) const noexcept {
    for (std::size_t i = 0; i < vnfs.size(); ++i)
      if (vnfs[i].id == id) return i;
    return vnfs.size();
  }

  friend bool operator==(const ServiceChain&, const ServiceChain&) = default;
};

/// Current chain throughput in Gbps, uniform along the chain.
struct LoadState {
  double theta_cur = 0.0;

  friend bool operator==(const LoadState&, const LoadState&) = default;
};

inline constexpr double kDefaultPcieLatencyUs = 10.0;

struct Scenario {
  ServiceChain chain;
  SpecCatalog specs;
  LoadState load;
  double pcie_latency_us = kDefaultPcieLatencyUs;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Spec lookup for an instance. Precondition: the catalog resolves it
/// (guaranteed after validate()); throws std::out_of_range otherwise.
inline const VnfSpec& spec_of(const SpecCatalog& specs, const VnfInstance& v) {
  auto it = specs.find(v.spec);
  if (it == specs.end())
    throw std::out_of_range("unresolved spec '" + v.spec + "' for vNF '" + v.id + "'");
  return it->second;
}

/// Stand-in for the ">10 Gbps" LoadBalancer SmartNIC capacity. Any value
/// above 10 leaves the shipped scenarios' outcomes unchanged.
inline constexpr double kLoadBalancerSmartNicCap = 15.0;

/// Measured capacities of the four reference vNFs. Processing latencies are
/// not part of the measurement and default to zero.
inline SpecCatalog builtin_table1() {
  SpecCatalog c;
  auto add = [&c](std::string name, double s, double cpu) {
    c.emplace(name, VnfSpec{name, s, cpu, 0.0, 0.0});
  };
  add("Firewall", 10.0, 4.0);
  add("Logger", 2.0, 4.0);
  add("Monitor", 3.2, 10.0);
  add("LoadBalancer", kLoadBalancerSmartNicCap, 4.0);
  return c;
}

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  EmptyChain,
  DuplicateId,
  UnresolvedSpec,
  NonPositiveCapacity,
  NegativeLatency,
  NegativeLoad,
  NegativePcieLatency,
};

inline constexpr std::string_view to_string(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::EmptyChain: return "empty chain";
    case ViolationKind::DuplicateId: return "duplicate id";
    case ViolationKind::UnresolvedSpec: return "unresolved spec reference";
    case ViolationKind::NonPositiveCapacity: return "non-positive capacity";
    case ViolationKind::NegativeLatency: return "negative latency";
    case ViolationKind::NegativeLoad: return "negative load";
    case ViolationKind::NegativePcieLatency: return "negative pcie latency";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string field;  // e.g. "specs.Monitor.cap_smartnic", "chain[2].spec"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind k) const noexcept {
    for (const auto& v : violations)
      if (v.kind == k) return true;
    return false;
  }
  std::string summary() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += std::string(to_string(v.kind)) + " at " + v.field + ": " + v.message;
    }
    return out;
  }
};

/// Checks every scenario invariant and reports each violation separately.
/// A passing scenario is accepted by all other modules without rechecking.
/// Comparisons are written as !(x > 0) so NaN is rejected too.
inline ValidationReport validate(const Scenario& sc) {
  ValidationReport r;
  auto add = [&r](ViolationKind k, std::string field, std::string msg) {
    r.violations.push_back({k, std::move(field), std::move(msg)});
  };

  for (const auto& [key, spec] : sc.specs) {
    const std::string base = "specs." + key + ".";
    if (!(spec.cap_smartnic > 0.0))
      add(ViolationKind::NonPositiveCapacity, base + "cap_smartnic",
          "must be > 0, got " + std::to_string(spec.cap_smartnic));
    if (!(spec.cap_cpu > 0.0))
      add(ViolationKind::NonPositiveCapacity, base + "cap_cpu",
          "must be > 0, got " + std::to_string(spec.cap_cpu));
    if (!(spec.proc_latency_smartnic >= 0.0))
      add(ViolationKind::NegativeLatency, base + "proc_latency_smartnic",
          "must be >= 0, got " + std::to_string(spec.proc_latency_smartnic));
    if (!(spec.proc_latency_cpu >= 0.0))
      add(ViolationKind::NegativeLatency, base + "proc_latency_cpu",
          "must be >= 0, got " + std::to_string(spec.proc_latency_cpu));
  }

  if (sc.chain.vnfs.empty())
    add(ViolationKind::EmptyChain, "chain", "a service chain needs at least one vNF");

  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < sc.chain.vnfs.size(); ++i) {
    const auto& v = sc.chain.vnfs[i];
    const std::string base = "chain[" + std::to_string(i) + "]";
    if (!seen.insert(v.id).second)
      add(ViolationKind::DuplicateId, base + ".id", "id '" + v.id + "' appears more than once");
    if (!sc.specs.contains(v.spec))
      add(ViolationKind::UnresolvedSpec, base + ".spec", "no spec named '" + v.spec + "'");
  }

  if (!(sc.load.theta_cur >= 0.0))
    add(ViolationKind::NegativeLoad, "theta_cur",
        "must be >= 0, got " + std::to_string(sc.load.theta_cur));
  if (!(sc.pcie_latency_us >= 0.0))
    add(ViolationKind::NegativePcieLatency, "pcie_latency_us",
        "must be >= 0, got " + std::to_string(sc.pcie_latency_us));
  return r;
}

}  // namespace pam

#endif  // PAM_CHAIN_MODEL_HPP
