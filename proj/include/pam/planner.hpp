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


// Migration planners for an overloaded SmartNIC.
//
// PAM migrates SmartNIC vNFs that sit on the SmartNIC/CPU border, so no new
// PCIe crossings are introduced. Each round it picks the border vNF with the
// smallest SmartNIC capacity, skips it if the CPU cannot absorb it, and
// stops once the remaining SmartNIC load is strictly below 1. Migrating a
// left border exposes its downstream SmartNIC neighbor as a new left border
// (right borders symmetrically expose their upstream neighbor).
//
// The naive baseline runs the same loop over every SmartNIC vNF.

#ifndef PAM_PLANNER_HPP
#define PAM_PLANNER_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pam/chain_model.hpp"
#include "pam/resource_model.hpp"

namespace pam {

/// Chain indices of left borders (upstream neighbor on CPU) and right
/// borders (downstream neighbor on CPU). A singleton SmartNIC segment is in
/// both sets.
struct BorderSets {
  std::set<std::size_t> left;
  std::set<std::size_t> right;

  std::set<std::size_t> members() const {
    std::set<std::size_t> u = left;
    u.insert(right.begin(), right.end());
    return u;
  }
  bool empty() const noexcept { return left.empty() && right.empty(); }
  void erase(std::size_t i) {
    left.erase(i);
    right.erase(i);
  }

  friend bool operator==(const BorderSets&, const BorderSets&) = default;
};

enum class Policy { Pam, Naive };
enum class Outcome { NotOverloaded, Resolved, ScaleOutRequired };
enum class BorderSide { None, Left, Right, Both };

inline constexpr std::string_view to_string(Policy p) noexcept {
  return p == Policy::Pam ? "pam" : "naive";
}

inline constexpr std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::NotOverloaded: return "not_overloaded";
    case Outcome::Resolved: return "resolved";
    case Outcome::ScaleOutRequired: return "scale_out_required";
  }
  return "unknown";
}

inline constexpr std::string_view to_string(BorderSide s) noexcept {
  switch (s) {
    case BorderSide::None: return "none";
    case BorderSide::Left: return "left";
    case BorderSide::Right: return "right";
    case BorderSide::Both: return "both";
  }
  return "unknown";
}

struct MigrationStep {
  std::string vnf_id;
  Placement from = Placement::SmartNic;
  Placement to = Placement::Cpu;
  // Every emitted step is the minimum-SmartNIC-capacity candidate of its
  // round; the side records which border set it was drawn from (None for
  // the naive baseline, whose pool is not border-restricted).
  BorderSide side = BorderSide::None;

  friend bool operator==(const MigrationStep&, const MigrationStep&) = default;
};

inline constexpr std::string_view kRejectCpuHeadroom = "cpu_headroom";

struct RejectedCandidate {
  std::string vnf_id;
  std::string reason{kRejectCpuHeadroom};

  friend bool operator==(const RejectedCandidate&, const RejectedCandidate&) = default;
};

struct MigrationPlan {
  Policy policy = Policy::Pam;
  std::vector<MigrationStep> steps;
  Outcome outcome = Outcome::NotOverloaded;
  std::vector<RejectedCandidate> rejected_candidates;
  ServiceChain post_chain;

  friend bool operator==(const MigrationPlan&, const MigrationPlan&) = default;
};

/// Called once per selection round with the candidate pool (ascending chain
/// indices), the chosen index and the chain as it stands before the choice
/// is checked.
using SelectionObserver =
    std::function<void(std::span<const std::size_t> pool, std::size_t chosen,
                       const ServiceChain& current)>;

// ---------------------------------------------------------------------------

inline BorderSets identify_borders(const ServiceChain& chain) {
  BorderSets b;
  const std::size_t n = chain.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (chain.vnfs[i].placement != Placement::SmartNic) continue;
    const Placement up = i == 0 ? chain.ingress_anchor : chain.vnfs[i - 1].placement;
    const Placement down = i + 1 == n ? chain.egress_anchor : chain.vnfs[i + 1].placement;
    if (up == Placement::Cpu) b.left.insert(i);
    if (down == Placement::Cpu) b.right.insert(i);
  }
  return b;
}

/// Pool member with the smallest SmartNIC capacity; ties go to the lowest
/// chain index.
inline std::optional<std::size_t> select_min_smartnic_capacity(
    const std::set<std::size_t>& pool, const ServiceChain& chain, const SpecCatalog& specs) {
  std::optional<std::size_t> best;
  double best_cap = 0.0;
  for (std::size_t i : pool) {
    const double cap = spec_of(specs, chain.vnfs[i]).cap_smartnic;
    if (!best || cap < best_cap) {
      best = i;
      best_cap = cap;
    }
  }
  return best;
}

inline std::optional<std::size_t> select_candidate(const BorderSets& borders,
                                                   const ServiceChain& chain,
                                                   const SpecCatalog& specs) {
  return select_min_smartnic_capacity(borders.members(), chain, specs);
}

/// True iff the CPU stays strictly below full utilization after also
/// hosting `candidate`. `chain` reflects every step applied so far.
inline bool check_cpu_headroom(const ServiceChain& chain, const SpecCatalog& specs,
                               std::size_t candidate, LoadState load) {
  const double cpu = device_utilization(chain, specs, Placement::Cpu, load);
  return cpu + load.theta_cur / spec_of(specs, chain.vnfs[candidate]).cap_cpu < 1.0;
}

/// True iff the SmartNIC load without `candidate` is strictly below 1.
inline bool check_alleviated(const ServiceChain& chain, const SpecCatalog& specs,
                             std::size_t candidate, LoadState load) {
  double sum = 0.0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& v = chain.vnfs[i];
    if (i == candidate || v.placement != Placement::SmartNic) continue;
    sum += load.theta_cur / spec_of(specs, v).cap_smartnic;
  }
  return sum < 1.0;
}

/// Applies steps in order. Throws std::invalid_argument if a step names an
/// unknown vNF or one not currently on its `from` device.
inline ServiceChain apply_steps(ServiceChain chain, std::span<const MigrationStep> steps) {
  for (const auto& s : steps) {
    const std::size_t i = chain.index_of(s.vnf_id);
    if (i == chain.size())
      throw std::invalid_argument("step references unknown vNF '" + s.vnf_id + "'");
    if (chain.vnfs[i].placement != s.from)
      throw std::invalid_argument("vNF '" + s.vnf_id + "' is not on " +
                                  std::string(to_string(s.from)));
    chain.vnfs[i].placement = s.to;
  }
  return chain;
}

namespace detail {

enum class TryResult { Rejected, MigratedContinue, MigratedResolved };

// One pass of the shared Step-3 logic for a chosen candidate.
inline TryResult try_candidate(MigrationPlan& plan, const SpecCatalog& specs,
                               std::size_t idx, LoadState load, BorderSide side) {
  ServiceChain& cur = plan.post_chain;
  if (!check_cpu_headroom(cur, specs, idx, load)) {
    plan.rejected_candidates.push_back({cur.vnfs[idx].id, std::string(kRejectCpuHeadroom)});
    return TryResult::Rejected;
  }
  const bool done = check_alleviated(cur, specs, idx, load);
  plan.steps.push_back({cur.vnfs[idx].id, Placement::SmartNic, Placement::Cpu, side});
  cur.vnfs[idx].placement = Placement::Cpu;
  return done ? TryResult::MigratedResolved : TryResult::MigratedContinue;
}

inline void notify(const SelectionObserver& obs, const std::set<std::size_t>& pool,
                   std::size_t chosen, const ServiceChain& cur) {
  if (!obs) return;
  const std::vector<std::size_t> v(pool.begin(), pool.end());
  obs(v, chosen, cur);
}

}  // namespace detail

inline MigrationPlan plan_pam(const ServiceChain& chain, const SpecCatalog& specs,
                              LoadState load, const SelectionObserver& observer = {}) {
  MigrationPlan plan;
  plan.policy = Policy::Pam;
  plan.post_chain = chain;
  if (!is_overloaded(chain, specs, Placement::SmartNic, load)) {
    plan.outcome = Outcome::NotOverloaded;
    return plan;
  }

  BorderSets borders = identify_borders(chain);
  std::set<std::size_t> rejected;
  ServiceChain& cur = plan.post_chain;
  const std::size_t n = cur.size();

  while (auto pick = select_candidate(borders, cur, specs)) {
    const std::size_t b0 = *pick;
    detail::notify(observer, borders.members(), b0, cur);

    const bool in_left = borders.left.contains(b0);
    const bool in_right = borders.right.contains(b0);
    const BorderSide side = in_left && in_right ? BorderSide::Both
                            : in_left           ? BorderSide::Left
                                                : BorderSide::Right;
    const auto result = detail::try_candidate(plan, specs, b0, load, side);
    borders.erase(b0);
    if (result == detail::TryResult::Rejected) {
      rejected.insert(b0);
      continue;
    }
    // Rejected vNFs stay out for the rest of the round.
    auto promote = [&](std::set<std::size_t>& set, std::size_t j) {
      if (cur.vnfs[j].placement == Placement::SmartNic && !rejected.contains(j)) set.insert(j);
    };
    if (in_left && b0 + 1 < n) promote(borders.left, b0 + 1);
    if (in_right && b0 > 0) promote(borders.right, b0 - 1);

    if (result == detail::TryResult::MigratedResolved) {
      plan.outcome = Outcome::Resolved;
      return plan;
    }
  }
  plan.outcome = Outcome::ScaleOutRequired;
  return plan;
}

inline MigrationPlan plan_naive(const ServiceChain& chain, const SpecCatalog& specs,
                                LoadState load, const SelectionObserver& observer = {}) {
  MigrationPlan plan;
  plan.policy = Policy::Naive;
  plan.post_chain = chain;
  if (!is_overloaded(chain, specs, Placement::SmartNic, load)) {
    plan.outcome = Outcome::NotOverloaded;
    return plan;
  }

  std::set<std::size_t> pool;
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (chain.vnfs[i].placement == Placement::SmartNic) pool.insert(i);

  while (auto pick = select_min_smartnic_capacity(pool, plan.post_chain, specs)) {
    detail::notify(observer, pool, *pick, plan.post_chain);
    const auto result = detail::try_candidate(plan, specs, *pick, load, BorderSide::None);
    pool.erase(*pick);
    if (result == detail::TryResult::MigratedResolved) {
      plan.outcome = Outcome::Resolved;
      return plan;
    }
  }
  plan.outcome = Outcome::ScaleOutRequired;
  return plan;
}

inline MigrationPlan plan_for(Policy policy, const ServiceChain& chain, const SpecCatalog& specs,
                              LoadState load) {
  return policy == Policy::Pam ? plan_pam(chain, specs, load) : plan_naive(chain, specs, load);
}

}  // namespace pam

#endif  // PAM_PLANNER_HPP
