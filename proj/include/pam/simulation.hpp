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


// Trace replay and side-by-side policy comparison.

#ifndef PAM_SIMULATION_HPP
#define PAM_SIMULATION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pam/chain_model.hpp"
#include "pam/oracle.hpp"
#include "pam/perf_model.hpp"
#include "pam/planner.hpp"
#include "pam/resource_model.hpp"
#include "pam/scenario_io.hpp"

namespace pam {

enum class ReplayPolicy { Pam, Naive, None };

inline constexpr std::string_view to_string(ReplayPolicy p) noexcept {
  switch (p) {
    case ReplayPolicy::Pam: return "pam";
    case ReplayPolicy::Naive: return "naive";
    case ReplayPolicy::None: return "none";
  }
  return "unknown";
}

inline ReplayPolicy replay_policy_from_string(std::string_view s) {
  if (s == "pam") return ReplayPolicy::Pam;
  if (s == "naive") return ReplayPolicy::Naive;
  if (s == "none") return ReplayPolicy::None;
  throw std::invalid_argument("unknown policy '" + std::string(s) + "'");
}

// Outcome label for the unmanaged policy when the SmartNIC is a hot spot.
inline constexpr std::string_view kUnmanagedOutcome = "unmanaged";

struct TimelineRecord {
  double t = 0.0;
  double theta_cur = 0.0;
  std::string policy;
  double smartnic_util = 0.0;
  double cpu_util = 0.0;
  std::size_t crossings = 0;
  double latency_us = 0.0;
  double max_throughput_gbps = 0.0;
  std::vector<std::string> migrations_this_step;
  std::size_t cumulative_migrations = 0;
  std::string outcome;

  friend bool operator==(const TimelineRecord&, const TimelineRecord&) = default;
};

/// Replays a load trace: at each point the policy plans once against the
/// chain left by earlier points, its steps are applied and the resulting
/// state is recorded.
inline std::vector<TimelineRecord> run_trace(const Scenario& sc,
                                             std::span<const TracePoint> trace,
                                             ReplayPolicy policy) {
  std::vector<TimelineRecord> out;
  out.reserve(trace.size());
  ServiceChain chain = sc.chain;
  std::size_t cumulative = 0;
  for (const auto& p : trace) {
    const LoadState load{p.theta_cur};
    TimelineRecord r;
    r.t = p.t;
    r.theta_cur = p.theta_cur;
    r.policy = std::string(to_string(policy));
    if (policy == ReplayPolicy::None) {
      r.outcome = is_overloaded(chain, sc.specs, Placement::SmartNic, load)
                      ? std::string(kUnmanagedOutcome)
                      : std::string(to_string(Outcome::NotOverloaded));
    } else {
      const auto plan = plan_for(policy == ReplayPolicy::Pam ? Policy::Pam : Policy::Naive,
                                 chain, sc.specs, load);
      for (const auto& s : plan.steps) r.migrations_this_step.push_back(s.vnf_id);
      cumulative += plan.steps.size();
      chain = plan.post_chain;
      r.outcome = std::string(to_string(plan.outcome));
    }
    r.cumulative_migrations = cumulative;
    r.smartnic_util = device_utilization(chain, sc.specs, Placement::SmartNic, load);
    r.cpu_util = device_utilization(chain, sc.specs, Placement::Cpu, load);
    const PerfEstimate perf = estimate_perf(chain, sc.specs, sc.pcie_latency_us);
    r.crossings = perf.crossings;
    r.latency_us = perf.latency_us;
    r.max_throughput_gbps = perf.max_throughput_gbps;
    out.push_back(std::move(r));
  }
  return out;
}

struct PolicyResult {
  MigrationPlan plan;
  PerfEstimate before;
  PerfEstimate after;
  std::optional<VerificationReport> verification;  // set when n <= oracle cap
};

struct ComparisonReport {
  LoadState load;
  double pcie_latency_us = 0.0;
  PolicyResult pam;
  PolicyResult naive;
  // How much lower PAM's post-migration latency is than naive's, in percent
  // of naive's. Zero when naive's latency is zero.
  double latency_reduction_pct = 0.0;
};

/// Runs both planners from the same starting chain and load.
inline ComparisonReport compare(const Scenario& sc, LoadState load) {
  ComparisonReport rep;
  rep.load = load;
  rep.pcie_latency_us = sc.pcie_latency_us;
  const PerfEstimate before = estimate_perf(sc.chain, sc.specs, sc.pcie_latency_us);
  auto run = [&](Policy p) {
    PolicyResult r;
    r.plan = plan_for(p, sc.chain, sc.specs, load);
    r.before = before;
    r.after = estimate_perf(r.plan.post_chain, sc.specs, sc.pcie_latency_us);
    if (sc.chain.size() <= kMaxOracleChainLength)
      r.verification = verify_plan(sc.chain, sc.specs, load, r.plan);
    return r;
  };
  rep.pam = run(Policy::Pam);
  rep.naive = run(Policy::Naive);
  const double naive_lat = rep.naive.after.latency_us;
  if (naive_lat > 0.0)
    rep.latency_reduction_pct = (naive_lat - rep.pam.after.latency_us) / naive_lat * 100.0;
  return rep;
}

inline ComparisonReport compare(const Scenario& sc) { return compare(sc, sc.load); }

}  // namespace pam

#endif  // PAM_SIMULATION_HPP
