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


// Brute-force ground truth for small chains: full placement enumeration and
// independent checking of migration plans.

#ifndef PAM_ORACLE_HPP
#define PAM_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "pam/chain_model.hpp"
#include "pam/perf_model.hpp"
#include "pam/planner.hpp"
#include "pam/resource_model.hpp"

namespace pam {

inline constexpr std::size_t kMaxOracleChainLength = 20;

struct PlacementRecord {
  std::vector<Placement> placement_vector;
  bool feasible_smartnic = false;  // utilization < 1
  bool feasible_cpu = false;
  std::size_t crossings = 0;
  std::size_t migrations_from_input = 0;  // SmartNIC -> CPU moves vs. input
  bool offload_only = false;              // no CPU -> SmartNIC moves vs. input

  bool feasible() const noexcept { return feasible_smartnic && feasible_cpu; }
};

namespace detail {

using PlacementMask = std::uint32_t;  // bit i set: vNF i on CPU

inline PlacementMask mask_of(const ServiceChain& chain) {
  PlacementMask m = 0;
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (chain.vnfs[i].placement == Placement::Cpu) m |= PlacementMask{1} << i;
  return m;
}

inline ServiceChain with_mask(ServiceChain chain, PlacementMask m) {
  for (std::size_t i = 0; i < chain.size(); ++i)
    chain.vnfs[i].placement = (m >> i) & 1U ? Placement::Cpu : Placement::SmartNic;
  return chain;
}

inline void require_small(const ServiceChain& chain) {
  if (chain.size() > kMaxOracleChainLength)
    throw std::length_error("chain of length " + std::to_string(chain.size()) +
                            " is too long for enumeration (max " +
                            std::to_string(kMaxOracleChainLength) + ")");
}

inline std::string describe(const ServiceChain& chain) {
  std::string s = "[";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) s += ", ";
    s += chain.vnfs[i].id + "@" +
         (chain.vnfs[i].placement == Placement::SmartNic ? "S" : "C");
  }
  return s + "]";
}

}  // namespace detail

/// All 2^n placements of the chain's vNFs, in binary counting order where
/// bit i of the record index puts vNF i on the CPU (record 0 = all SmartNIC).
/// Throws std::length_error above kMaxOracleChainLength.
inline std::vector<PlacementRecord> enumerate_placements(const ServiceChain& chain,
                                                         const SpecCatalog& specs,
                                                         LoadState load) {
  detail::require_small(chain);
  const std::size_t n = chain.size();
  const std::size_t total = std::size_t{1} << n;
  std::vector<PlacementRecord> out;
  out.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    const ServiceChain c = detail::with_mask(chain, static_cast<detail::PlacementMask>(k));
    PlacementRecord r;
    r.placement_vector.reserve(n);
    r.offload_only = true;
    for (std::size_t i = 0; i < n; ++i) {
      const Placement was = chain.vnfs[i].placement;
      const Placement now = c.vnfs[i].placement;
      r.placement_vector.push_back(now);
      if (was == Placement::SmartNic && now == Placement::Cpu) ++r.migrations_from_input;
      if (was == Placement::Cpu && now == Placement::SmartNic) r.offload_only = false;
    }
    r.feasible_smartnic = !is_overloaded(c, specs, Placement::SmartNic, load);
    r.feasible_cpu = !is_overloaded(c, specs, Placement::Cpu, load);
    r.crossings = count_crossings(c);
    out.push_back(std::move(r));
  }
  return out;
}

/// Fewest-migration fully feasible record reachable by SmartNIC->CPU moves
/// with at most `max_crossings` crossings. Ties go to the lower record index.
inline std::optional<std::size_t> min_migration_feasible(
    const std::vector<PlacementRecord>& records, std::size_t max_crossings) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    if (!r.offload_only || !r.feasible() || r.crossings > max_crossings) continue;
    if (!best || r.migrations_from_input < records[*best].migrations_from_input) best = k;
  }
  return best;
}

/// Placements reachable from `start` by repeatedly moving one SmartNIC vNF
/// to the CPU. With `borders_only`, each move must take a vNF that is a
/// border in the current placement (border peeling). `start` is included.
inline std::vector<ServiceChain> migration_closure(const ServiceChain& start, bool borders_only) {
  detail::require_small(start);
  std::vector<ServiceChain> out;
  std::unordered_set<detail::PlacementMask> seen{detail::mask_of(start)};
  std::deque<ServiceChain> queue{start};
  while (!queue.empty()) {
    ServiceChain cur = std::move(queue.front());
    queue.pop_front();
    std::set<std::size_t> moves;
    if (borders_only) {
      moves = identify_borders(cur).members();
    } else {
      for (std::size_t i = 0; i < cur.size(); ++i)
        if (cur.vnfs[i].placement == Placement::SmartNic) moves.insert(i);
    }
    for (std::size_t i : moves) {
      ServiceChain next = cur;
      next.vnfs[i].placement = Placement::Cpu;
      if (seen.insert(detail::mask_of(next)).second) queue.push_back(std::move(next));
    }
    out.push_back(std::move(cur));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plan verification

enum class PlanCheck {
  Reachability,         // post_chain = input with the steps applied
  OutcomeConsistency,   // NotOverloaded iff input SmartNIC feasible, then no steps
  ResolvedFeasibility,  // Resolved post-state strictly feasible on both devices
  CrossingNonIncrease,  // PAM plans never add crossings
  ScaleOutCertified,    // ScaleOutRequired: nothing feasible left to reach
};

inline constexpr std::string_view to_string(PlanCheck c) noexcept {
  switch (c) {
    case PlanCheck::Reachability: return "reachability";
    case PlanCheck::OutcomeConsistency: return "outcome-consistency";
    case PlanCheck::ResolvedFeasibility: return "resolved-feasibility";
    case PlanCheck::CrossingNonIncrease: return "crossing-non-increase";
    case PlanCheck::ScaleOutCertified: return "scale-out-certified";
  }
  return "unknown";
}

struct CheckFailure {
  PlanCheck check;
  std::string message;
  std::string witness;  // offending placement, when there is one
};

struct VerificationReport {
  std::vector<CheckFailure> failures;
  std::size_t checks_run = 0;
  // Informational only, ScaleOutRequired plans: a feasible, non-crossing-
  // increasing placement reachable from the *input* by the planner's own
  // move rule. The greedy loop does not promise to find one.
  std::optional<std::string> input_closure_witness;
  // Informational only: any feasible placement reachable by SmartNIC->CPU
  // moves from the input, regardless of crossings or borders.
  std::optional<std::string> global_offload_witness;

  bool passed() const noexcept { return failures.empty(); }
  bool failed(PlanCheck c) const noexcept {
    for (const auto& f : failures)
      if (f.check == c) return true;
    return false;
  }
};

namespace detail {

inline bool strictly_feasible(const ServiceChain& c, const SpecCatalog& specs, LoadState load) {
  return !is_overloaded(c, specs, Placement::SmartNic, load) &&
         !is_overloaded(c, specs, Placement::Cpu, load);
}

inline std::optional<std::string> feasible_in_closure(const ServiceChain& start,
                                                      bool borders_only,
                                                      const SpecCatalog& specs,
                                                      LoadState load,
                                                      std::size_t max_crossings) {
  for (const auto& c : migration_closure(start, borders_only))
    if (strictly_feasible(c, specs, load) && count_crossings(c) <= max_crossings)
      return describe(c);
  return std::nullopt;
}

}  // namespace detail

/// Checks a plan against the input it was computed from. ScaleOutRequired is
/// certified over the closure of the planner's own move rule (border peeling
/// for PAM, any SmartNIC vNF for naive) starting at the plan's final
/// placement: no placement in it may be feasible without adding crossings.
inline VerificationReport verify_plan(const ServiceChain& chain, const SpecCatalog& specs,
                                      LoadState load, const MigrationPlan& plan) {
  detail::require_small(chain);
  VerificationReport rep;
  auto fail = [&rep](PlanCheck c, std::string msg, std::string witness = {}) {
    rep.failures.push_back({c, std::move(msg), std::move(witness)});
  };
  const std::size_t input_crossings = count_crossings(chain);
  const bool borders_only = plan.policy == Policy::Pam;

  ++rep.checks_run;
  bool reachable = true;
  for (const auto& s : plan.steps) {
    if (s.from != Placement::SmartNic || s.to != Placement::Cpu) {
      fail(PlanCheck::Reachability, "step for '" + s.vnf_id + "' is not SmartNIC->CPU");
      reachable = false;
    }
  }
  try {
    const ServiceChain replay = apply_steps(chain, plan.steps);
    if (!(replay == plan.post_chain)) {
      fail(PlanCheck::Reachability, "post_chain differs from input with steps applied",
           detail::describe(plan.post_chain));
      reachable = false;
    }
  } catch (const std::invalid_argument& e) {
    fail(PlanCheck::Reachability, e.what());
    reachable = false;
  }

  ++rep.checks_run;
  const bool input_overloaded = is_overloaded(chain, specs, Placement::SmartNic, load);
  if ((plan.outcome == Outcome::NotOverloaded) == input_overloaded)
    fail(PlanCheck::OutcomeConsistency,
         std::string("outcome ") + std::string(to_string(plan.outcome)) +
             " but input SmartNIC utilization is " +
             std::to_string(device_utilization(chain, specs, Placement::SmartNic, load)));
  if (plan.outcome == Outcome::NotOverloaded && !plan.steps.empty())
    fail(PlanCheck::OutcomeConsistency, "not_overloaded plan carries steps");

  if (plan.outcome == Outcome::Resolved) {
    ++rep.checks_run;
    const double s = device_utilization(plan.post_chain, specs, Placement::SmartNic, load);
    const double c = device_utilization(plan.post_chain, specs, Placement::Cpu, load);
    if (!(s < 1.0) || !(c < 1.0))
      fail(PlanCheck::ResolvedFeasibility,
           "post-state utilization SmartNIC " + std::to_string(s) + ", CPU " + std::to_string(c),
           detail::describe(plan.post_chain));
  }

  if (plan.policy == Policy::Pam) {
    ++rep.checks_run;
    const std::size_t post = count_crossings(plan.post_chain);
    if (post > input_crossings)
      fail(PlanCheck::CrossingNonIncrease,
           "crossings " + std::to_string(post) + " > " + std::to_string(input_crossings),
           detail::describe(plan.post_chain));
  }

  if (plan.outcome == Outcome::ScaleOutRequired && reachable) {
    ++rep.checks_run;
    if (auto w = detail::feasible_in_closure(plan.post_chain, borders_only, specs, load,
                                             input_crossings))
      fail(PlanCheck::ScaleOutCertified,
           "a feasible placement is still reachable from the final placement", *w);
    rep.input_closure_witness =
        detail::feasible_in_closure(chain, borders_only, specs, load, input_crossings);
    rep.global_offload_witness = detail::feasible_in_closure(
        chain, false, specs, load, std::numeric_limits<std::size_t>::max());
  }
  return rep;
}

}  // namespace pam

#endif  // PAM_ORACLE_HPP
